use std::fmt::Write as _;
use std::fs;

use serde_json::{json, Value};

use posmon_core::algebra::{
    build_representation, nonabelian_witness, verify_representation, Branch, RepError,
};
use posmon_core::discriminant::{rational_text, specialize_and_check, weight_audit};
use posmon_core::divisibility::{common_multiples, divides, lcm_certificate, quotients};
use posmon_core::structure::{
    cancellation_scan, check_morphism, coxeter_power_search, is_fundamental, is_quasi_central,
    verify_listed_fundamentals, FundamentalOutcome, FundamentalWitness, ListedError,
    PermutationSigma, PowerSearch, WitnessMode,
};
use posmon_core::{
    catalog_lookup, Direction, LcmCertificate, Presentation, Rewriter, SearchBudget, Side,
    TypeLabel, Verdict, Word,
};

use crate::args::{BranchArg, Command, GlobalArgs, SideArg};
use crate::output::{verdict_json, verdict_str, CliError, Report, Status};

/// Classes larger than this are summarized unless `--full` is given.
const MEMBER_LIMIT: usize = 1000;

pub struct Source {
    pub name: String,
    pub pres: Presentation,
}

impl Source {
    pub fn json(&self) -> Value {
        json!({
            "source": self.name,
            "fingerprint": format!("{:016x}", self.pres.fingerprint()),
            "letters": self.pres.names(),
            "relations": self.pres.relations().len(),
        })
    }
}

pub struct Ctx<'a> {
    pub global: &'a GlobalArgs,
    pub budget: SearchBudget,
}

impl Ctx<'_> {
    pub fn source(&self) -> Result<Source, CliError> {
        match (&self.global.type_label, &self.global.presentation_file) {
            (Some(_), Some(_)) => Err(CliError::usage(
                "give either --type or --presentation-file, not both",
            )),
            (None, None) => Err(CliError::usage(
                "this command needs --type <LABEL> or --presentation-file <PATH>",
            )),
            (Some(t), None) => Ok(Source {
                name: t.clone(),
                pres: catalog_lookup(t).map_err(CliError::usage)?,
            }),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                let pres = Presentation::parse(&text)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                Ok(Source {
                    name: path.display().to_string(),
                    pres,
                })
            }
        }
    }

    pub fn label(&self) -> Result<TypeLabel, CliError> {
        if self.global.presentation_file.is_some() {
            return Err(CliError::usage("this command works on catalog types only; use --type"));
        }
        let t = self
            .global
            .type_label
            .as_deref()
            .ok_or_else(|| CliError::usage("this command needs --type <LABEL>"))?;
        t.parse().map_err(CliError::usage)
    }
}

/// Whether a subcommand reads the global presentation source.
pub fn uses_source(cmd: &Command) -> bool {
    !matches!(
        cmd,
        Command::Theorem3
            | Command::Morphism { .. }
            | Command::RepVerify { .. }
            | Command::OmegaCheck { .. }
            | Command::Catalog
    )
}

pub fn run(ctx: &Ctx<'_>, cmd: &Command, src: Option<&Source>) -> Result<Report, CliError> {
    let pres = || src.map(|s| &s.pres).expect("presentation loaded");
    match cmd {
        Command::Class { word, full } => class(ctx, pres(), word, *full),
        Command::Equiv { u, v } => equiv(ctx, pres(), u, v),
        Command::Derive { u, v } => derive(ctx, pres(), u, v),
        Command::Divides { u, w, side } => divides_cmd(ctx, pres(), u, w, side_of(*side)),
        Command::CommonMultiples { u, v, side, length } => {
            common_multiples_cmd(ctx, pres(), u, v, side_of(*side), *length)
        }
        Command::Lcm {
            u,
            v,
            side,
            max_length,
        } => lcm(ctx, pres(), u, v, side_of(*side), *max_length),
        Command::Fundamental { word, independent } => {
            let mode = if *independent {
                WitnessMode::Independent
            } else {
                WitnessMode::Shared
            };
            fundamental(ctx, pres(), word, mode)
        }
        Command::QuasiCentral { word } => quasi_central(ctx, pres(), word),
        Command::Theorem3 => theorem3(ctx),
        Command::CancelScan { max_length } => cancel_scan(ctx, pres(), *max_length),
        Command::Morphism { from, to, map } => morphism(ctx, from, to, map),
        Command::Coxeter { max_k } => coxeter(ctx, pres(), *max_k),
        Command::RepVerify { branch } => rep_verify(ctx, *branch),
        Command::OmegaCheck { all } => omega_check(ctx, *all),
        Command::Catalog => catalog(),
    }
}

fn side_of(s: SideArg) -> Side {
    match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

fn parse_word(pres: &Presentation, text: &str) -> Result<Word, CliError> {
    pres.parse_word(text)
        .map_err(|e| CliError::usage(format!("word {text:?}: {e}")))
}

/// Text rendering; the empty word prints as `1`.
fn show(pres: &Presentation, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        pres.format_word(w)
    }
}

fn class(ctx: &Ctx<'_>, pres: &Presentation, word: &str, full: bool) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let w = parse_word(pres, word)?;
    let c = rw.equivalence_class(&w, ctx.budget)?;
    let elided = !full && c.size() > MEMBER_LIMIT;
    let members: Vec<String> = if elided {
        Vec::new()
    } else {
        c.words().map(|m| pres.format_word(&m)).collect()
    };
    let mut text = format!(
        "class of {}: {} members, canonical {}\n",
        show(pres, &w),
        c.size(),
        show(pres, &c.canonical())
    );
    for m in c.words().take(if elided { 0 } else { usize::MAX }) {
        writeln!(text, "  {}", show(pres, &m)).unwrap();
    }
    if elided {
        writeln!(text, "  (members elided; pass --full)").unwrap();
    }
    Ok(Report::new(
        Status::Holds,
        json!({
            "seed": pres.format_word(&w),
            "canonical": pres.format_word(&c.canonical()),
            "size": c.size(),
            "members": members,
            "members_elided": elided,
        }),
        text,
    ))
}

fn equiv(ctx: &Ctx<'_>, pres: &Presentation, u: &str, v: &str) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let (uw, vw) = (parse_word(pres, u)?, parse_word(pres, v)?);
    let verdict = rw.are_equivalent(&uw, &vw, ctx.budget);
    let mut body = verdict_json(verdict);
    body["u"] = json!(pres.format_word(&uw));
    body["v"] = json!(pres.format_word(&vw));
    let text = format!("{} ~ {}: {}\n", show(pres, &uw), show(pres, &vw), verdict_str(verdict));
    Ok(Report::new(Status::from_verdict(verdict), body, text))
}

fn derive(ctx: &Ctx<'_>, pres: &Presentation, u: &str, v: &str) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let (uw, vw) = (parse_word(pres, u)?, parse_word(pres, v)?);
    let Some(d) = rw.derivation(&uw, &vw, ctx.budget)? else {
        return Ok(Report::new(
            Status::Fails,
            json!({"u": pres.format_word(&uw), "v": pres.format_word(&vw), "derivation": null}),
            format!("{} and {} are not equivalent\n", show(pres, &uw), show(pres, &vw)),
        ));
    };
    d.replay(&rw).map_err(CliError::internal)?;
    let rels = rw.presentation();
    let mut text = format!("{}\n", show(pres, &uw));
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| {
            let rel = rels.format_relation(&rels.relations()[s.relation]);
            let dir = match s.direction {
                Direction::Forward => "forward",
                Direction::Backward => "backward",
            };
            writeln!(text, "  = {}  [{rel} {dir} at {}]", show(pres, &s.word), s.position).unwrap();
            json!({
                "word": pres.format_word(&s.word),
                "position": s.position,
                "relation": s.relation,
                "relation_text": rel,
                "direction": dir,
            })
        })
        .collect();
    Ok(Report::new(
        Status::Holds,
        json!({
            "u": pres.format_word(&uw),
            "v": pres.format_word(&vw),
            "derivation": {"steps": steps, "replayed": true},
        }),
        text,
    ))
}

fn divides_cmd(
    ctx: &Ctx<'_>,
    pres: &Presentation,
    u: &str,
    w: &str,
    side: Side,
) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let (uw, ww) = (parse_word(pres, u)?, parse_word(pres, w)?);
    let hit = divides(&rw, &uw, &ww, side, ctx.budget)?;
    let qs = quotients(&rw, &uw, &ww, side, ctx.budget)?;
    let fw = |x: &Word| pres.format_word(x);
    let witness = hit.as_ref().map(|h| {
        json!({"multiple": fw(&h.multiple), "divisor": fw(&h.divisor), "quotient": fw(&h.quotient)})
    });
    let mut text = format!(
        "{} divides {} on the {}: {}\n",
        show(pres, &uw),
        show(pres, &ww),
        side.as_str(),
        if hit.is_some() { "yes" } else { "no" }
    );
    if let Some(h) = &hit {
        writeln!(
            text,
            "  {} = {} with quotient {}",
            show(pres, &h.multiple),
            match side {
                Side::Left => format!("{}·{}", show(pres, &h.divisor), show(pres, &h.quotient)),
                Side::Right => format!("{}·{}", show(pres, &h.quotient), show(pres, &h.divisor)),
            },
            show(pres, &h.quotient)
        )
        .unwrap();
    }
    Ok(Report::new(
        Status::from_bool(hit.is_some()),
        json!({
            "u": fw(&uw),
            "w": fw(&ww),
            "side": side.as_str(),
            "verdict": if hit.is_some() { "yes" } else { "no" },
            "witness": witness,
            "quotient_classes": qs.iter().map(fw).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn common_multiples_cmd(
    ctx: &Ctx<'_>,
    pres: &Presentation,
    u: &str,
    v: &str,
    side: Side,
    length: usize,
) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let (uw, vw) = (parse_word(pres, u)?, parse_word(pres, v)?);
    let set = common_multiples(&rw, &uw, &vw, side, length, ctx.budget)?;
    let words: Vec<String> = set.multiples.iter().map(|m| pres.format_word(m)).collect();
    let mut text = format!(
        "{} common multiples of {} and {} of length {length} on the {}\n",
        words.len(),
        show(pres, &uw),
        show(pres, &vw),
        side.as_str()
    );
    for m in &set.multiples {
        writeln!(text, "  {}", show(pres, m)).unwrap();
    }
    Ok(Report::new(
        Status::from_bool(!words.is_empty()),
        json!({
            "u": pres.format_word(&uw),
            "v": pres.format_word(&vw),
            "side": side.as_str(),
            "length": length,
            "multiples": words,
        }),
        text,
    ))
}

fn lcm(
    ctx: &Ctx<'_>,
    pres: &Presentation,
    u: &str,
    v: &str,
    side: Side,
    max_length: usize,
) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let (uw, vw) = (parse_word(pres, u)?, parse_word(pres, v)?);
    let cert = lcm_certificate(&rw, &uw, &vw, side, max_length, ctx.budget)?;
    let fw = |x: &Word| pres.format_word(x);
    let (status, certificate, text) = match &cert {
        LcmCertificate::LcmFound { lcm, checked_up_to } => (
            Status::Holds,
            json!({"kind": "LcmFound", "lcm": fw(lcm), "checked_up_to": checked_up_to}),
            format!(
                "lcm = {} (divides every common multiple up to length {checked_up_to})\n",
                show(pres, lcm)
            ),
        ),
        LcmCertificate::NoLcmUpTo {
            length,
            minimal,
            other,
        } => (
            Status::Fails,
            json!({"kind": "NoLcmUpTo", "length": length, "minimal": fw(minimal), "other": fw(other)}),
            format!(
                "no lcm up to length {length}: minimal common multiple {} does not divide common multiple {}\n",
                show(pres, minimal),
                show(pres, other)
            ),
        ),
        LcmCertificate::NoCommonMultipleUpTo { length } => (
            Status::Fails,
            json!({"kind": "NoCommonMultipleUpTo", "length": length}),
            format!("no common multiple up to length {length}\n"),
        ),
    };
    Ok(Report::new(
        status,
        json!({
            "u": fw(&uw),
            "v": fw(&vw),
            "side": side.as_str(),
            "max_length": max_length,
            "certificate": certificate,
        }),
        text,
    ))
}

fn sigma_json(pres: &Presentation, s: &PermutationSigma) -> Value {
    json!({"images": s.images_text(pres), "description": s.describe(pres), "identity": s.is_identity(pres)})
}

fn witness_json(pres: &Presentation, w: &FundamentalWitness) -> Value {
    let per: Vec<Value> = w
        .per_generator
        .iter()
        .map(|(a, l, r)| {
            json!({
                "generator": pres.name(*a),
                "left_quotient": pres.format_word(l),
                "right_quotient": pres.format_word(r),
            })
        })
        .collect();
    json!({
        "delta": pres.format_word(&w.delta),
        "sigma": sigma_json(pres, &w.sigma),
        "mode": mode_str(w.mode),
        "per_generator": per,
    })
}

fn mode_str(m: WitnessMode) -> &'static str {
    match m {
        WitnessMode::Shared => "shared",
        WitnessMode::Independent => "independent",
    }
}

fn fundamental(
    ctx: &Ctx<'_>,
    pres: &Presentation,
    word: &str,
    mode: WitnessMode,
) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let w = parse_word(pres, word)?;
    let out = is_fundamental(&rw, &w, mode, ctx.budget)?;
    let np = rw.presentation();
    for wit in out.witnesses() {
        if wit.replay(&rw, ctx.budget) != Verdict::Yes {
            return Err(CliError::internal("fundamental witness failed to replay"));
        }
    }
    let reason = match &out {
        FundamentalOutcome::Fundamental(_) => json!(null),
        FundamentalOutcome::NotLeftDivisible(a) => {
            json!({"kind": "NotLeftDivisible", "generator": np.name(*a)})
        }
        FundamentalOutcome::NoPermutation => json!({"kind": "NoPermutation"}),
        FundamentalOutcome::Empty => json!({"kind": "Empty"}),
    };
    let mut text = format!(
        "{}: {}\n",
        show(pres, &w),
        if out.is_fundamental() { "fundamental" } else { "not fundamental" }
    );
    match &out {
        FundamentalOutcome::NotLeftDivisible(a) => {
            writeln!(text, "  {} does not left-divide it", np.name(*a)).unwrap()
        }
        FundamentalOutcome::NoPermutation => {
            writeln!(text, "  no permutation satisfies both sides").unwrap()
        }
        FundamentalOutcome::Empty => writeln!(text, "  the empty word is excluded").unwrap(),
        FundamentalOutcome::Fundamental(ws) => {
            for wit in ws {
                writeln!(text, "  sigma: {}", wit.sigma.describe(np)).unwrap();
            }
        }
    }
    Ok(Report::new(
        Status::from_bool(out.is_fundamental()),
        json!({
            "word": pres.format_word(&w),
            "mode": mode_str(mode),
            "fundamental": out.is_fundamental(),
            "reason": reason,
            "witnesses": out.witnesses().iter().map(|x| witness_json(np, x)).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn quasi_central(ctx: &Ctx<'_>, pres: &Presentation, word: &str) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let w = parse_word(pres, word)?;
    let sigmas = is_quasi_central(&rw, &w, ctx.budget)?;
    let np = rw.presentation();
    let mut text = format!(
        "{}: {} permutation(s)\n",
        show(pres, &w),
        sigmas.len()
    );
    for s in &sigmas {
        writeln!(text, "  sigma: {}", s.describe(np)).unwrap();
    }
    Ok(Report::new(
        Status::from_bool(!sigmas.is_empty()),
        json!({
            "word": pres.format_word(&w),
            "quasi_central": !sigmas.is_empty(),
            "sigmas": sigmas.iter().map(|s| sigma_json(np, s)).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn theorem3(ctx: &Ctx<'_>) -> Result<Report, CliError> {
    let label = ctx.label()?;
    let report = verify_listed_fundamentals(label, ctx.budget).map_err(|e| match e {
        ListedError::Search { source, .. } => CliError::Search(source),
        other => CliError::internal(other),
    })?;
    let pres = Rewriter::new(&label.presentation().map_err(CliError::internal)?)
        .presentation()
        .clone();
    let mut text = format!("{label}\n");
    let elements: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let matching = c
                .outcome
                .witnesses()
                .iter()
                .find(|w| w.sigma == c.expected_sigma);
            writeln!(
                text,
                "  {} = {}: class size {}, sigma {} {}",
                c.name,
                show(&pres, &c.word),
                c.class_size,
                c.expected_sigma.describe(&pres),
                if c.verified() { "verified" } else { "NOT verified" }
            )
            .unwrap();
            json!({
                "name": c.name,
                "word": pres.format_word(&c.word),
                "class_size": c.class_size,
                "expected_sigma": sigma_json(&pres, &c.expected_sigma),
                "sigmas_found": c.outcome.witnesses().iter().map(|w| sigma_json(&pres, &w.sigma)).collect::<Vec<_>>(),
                "sigma_matches": c.sigma_matches(),
                "aliases": c.aliases.iter().map(|(w, v)| json!({"word": pres.format_word(w), "verdict": verdict_str(*v)})).collect::<Vec<_>>(),
                "witness": matching.map(|w| witness_json(&pres, w)),
                "verified": c.verified(),
            })
        })
        .collect();
    Ok(Report::new(
        Status::from_bool(report.all_verified()),
        json!({"type": label.as_str(), "elements": elements, "all_verified": report.all_verified()}),
        text,
    ))
}

fn cancel_scan(ctx: &Ctx<'_>, pres: &Presentation, max_length: usize) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let rep = cancellation_scan(&rw, max_length, ctx.budget)?;
    let np = rw.presentation();
    let mut text = format!(
        "{} classes scanned up to length {max_length}: {} violation(s)\n",
        rep.classes_scanned,
        rep.violations.len()
    );
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            writeln!(
                text,
                "  {} side, letter {}: {} and {} give {}",
                v.side.as_str(),
                np.name(v.letter),
                show(np, &v.x),
                show(np, &v.y),
                show(np, &v.product)
            )
            .unwrap();
            json!({
                "letter": np.name(v.letter),
                "side": v.side.as_str(),
                "product": np.format_word(&v.product),
                "x": np.format_word(&v.x),
                "y": np.format_word(&v.y),
            })
        })
        .collect();
    Ok(Report::new(
        Status::from_bool(violations.is_empty()),
        json!({
            "max_length": max_length,
            "classes_scanned": rep.classes_scanned,
            "violations": violations,
        }),
        text,
    ))
}

fn morphism(ctx: &Ctx<'_>, from: &str, to: &str, map: &str) -> Result<Report, CliError> {
    let src = catalog_lookup(from).map_err(CliError::usage)?;
    let dst = catalog_lookup(to).map_err(CliError::usage)?;
    let mut images: Vec<Option<Word>> = vec![None; src.alphabet_len()];
    for pair in map.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (l, r) = pair
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("map entry {pair:?} is not letter=word")))?;
        let letter = src
            .letter(l.trim())
            .ok_or_else(|| CliError::usage(format!("{from} has no letter {:?}", l.trim())))?;
        images[letter.index()] = Some(parse_word(&dst, r.trim())?);
    }
    let letter_map = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| {
                CliError::usage(format!("map gives no image for {}", src.names()[i]))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rw = Rewriter::new(&dst);
    let rep = check_morphism(&src, &rw, &letter_map, ctx.budget);
    let verdict = rep.verdict();
    let mut text = format!("{from} -> {to}: {}\n", match verdict {
        Verdict::Yes => "valid",
        Verdict::No => "invalid",
        Verdict::Inconclusive { .. } => "inconclusive",
    });
    if let Some(f) = rep.first_failure() {
        writeln!(
            text,
            "  relation {} maps to {} = {}, which do not agree",
            src.format_relation(&src.relations()[f.relation]),
            show(&dst, &f.lhs),
            show(&dst, &f.rhs)
        )
        .unwrap();
    }
    let relations: Vec<Value> = rep
        .images
        .iter()
        .map(|r| {
            let mut v = verdict_json(r.verdict);
            v["relation"] = json!(src.format_relation(&src.relations()[r.relation]));
            v["index"] = json!(r.relation);
            v["lhs_image"] = json!(dst.format_word(&r.lhs));
            v["rhs_image"] = json!(dst.format_word(&r.rhs));
            v
        })
        .collect();
    Ok(Report::new(
        Status::from_verdict(verdict),
        json!({
            "from": from,
            "to": to,
            "map": map,
            "valid": verdict == Verdict::Yes,
            "relations": relations,
        }),
        text,
    ))
}

fn coxeter(ctx: &Ctx<'_>, pres: &Presentation, max_k: usize) -> Result<Report, CliError> {
    let rw = Rewriter::new(pres);
    let base = parse_word(pres, "cba")
        .map_err(|_| CliError::usage("the Coxeter element needs letters a, b, c"))?;
    let res = coxeter_power_search(&rw, &base, max_k, ctx.budget)?;
    let np = rw.presentation();
    Ok(match res {
        PowerSearch::Found { k, witness } => Report::new(
            Status::Holds,
            json!({"max_k": max_k, "found": true, "k": k, "witness": witness_json(np, &witness)}),
            format!("(cba)^{k} is fundamental, sigma {}\n", witness.sigma.describe(np)),
        ),
        PowerSearch::NotFound { max_k } => Report::new(
            Status::Fails,
            json!({"max_k": max_k, "found": false, "k": null, "witness": null}),
            format!("no power (cba)^k with k <= {max_k} is fundamental\n"),
        ),
    })
}

fn branches_for(label: TypeLabel, arg: Option<BranchArg>) -> Vec<Branch> {
    match arg {
        Some(BranchArg::I) => vec![Branch::I],
        Some(BranchArg::Ii) => vec![Branch::II],
        Some(BranchArg::Degenerate) => vec![Branch::Degenerate],
        None if label == TypeLabel::Hii => vec![Branch::I, Branch::II],
        None => vec![Branch::I],
    }
}

fn rep_error(e: RepError) -> CliError {
    match e {
        RepError::UnsupportedType(_) | RepError::InvalidBranch { .. } => CliError::usage(e),
        other => CliError::internal(other),
    }
}

fn rep_verify(ctx: &Ctx<'_>, branch: Option<BranchArg>) -> Result<Report, CliError> {
    let label = ctx.label()?;
    let pres = label.presentation().map_err(CliError::internal)?;
    let mut all_ok = true;
    let mut text = String::new();
    let mut reports = Vec::new();
    for b in branches_for(label, branch) {
        let rep = build_representation(label, b).map_err(rep_error)?;
        let report = verify_representation(&rep).map_err(rep_error)?;
        let witness = nonabelian_witness(&rep).map_err(rep_error)?;
        let letters = ["a", "b", "c"];
        let nonabelian = witness.is_some();
        let ok = report.all_hold() && report.invertible() && (b == Branch::Degenerate || nonabelian);
        all_ok &= ok;
        writeln!(
            text,
            "{label} branch {}: {} of {} relations hold, {}",
            b.as_str(),
            report.checks.iter().filter(|c| c.holds).count(),
            report.checks.len(),
            if nonabelian { "nonabelian" } else { "abelian" }
        )
        .unwrap();
        let relations: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                let rel = format!("{} = {}", pres.format_word(&c.lhs), pres.format_word(&c.rhs));
                if c.holds {
                    json!({"index": c.relation, "relation": rel, "holds": true})
                } else {
                    writeln!(text, "  fails: {rel}\n    lhs {}\n    rhs {}", c.lhs_value, c.rhs_value).unwrap();
                    json!({
                        "index": c.relation,
                        "relation": rel,
                        "holds": false,
                        "lhs_value": c.lhs_value.to_string(),
                        "rhs_value": c.rhs_value.to_string(),
                    })
                }
            })
            .collect();
        if let Some(w) = &witness {
            writeln!(text, "  [{}, {}] = {}", letters[w.x], letters[w.y], w.value).unwrap();
        }
        reports.push(json!({
            "branch": b.as_str(),
            "ring": rep.ring.names(),
            "matrices": rep.matrices.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "determinants": report.determinants.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "all_hold": report.all_hold(),
            "relations": relations,
            "commutator": witness.map(|w| json!({"x": letters[w.x], "y": letters[w.y], "value": w.value.to_string()})),
        }));
    }
    Ok(Report::new(
        Status::from_bool(all_ok),
        json!({"type": label.as_str(), "branches": reports}),
        text,
    ))
}

fn monomial_text(e: &[u32; 3]) -> String {
    let mut s = String::new();
    for (v, k) in ["x", "y", "z"].iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => write!(s, "{v}^{k}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn omega_check(ctx: &Ctx<'_>, all: bool) -> Result<Report, CliError> {
    let labels: Vec<TypeLabel> = match (all, ctx.global.type_label.is_some()) {
        (true, true) => return Err(CliError::usage("give either --type or --all, not both")),
        (true, false) => TypeLabel::ALL.to_vec(),
        (false, _) => vec![ctx.label()?],
    };
    let mut ok = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for t in labels {
        let c = specialize_and_check(t).map_err(CliError::internal)?;
        let a = weight_audit(t).map_err(CliError::internal)?;
        let row_ok = c.holds() && a.passes();
        ok &= row_ok;
        writeln!(
            text,
            "{t}: {} (omega = {}, expected {}, constant {}, weights {})",
            if row_ok { "ok" } else { "MISMATCH" },
            c.omega,
            c.expected,
            c.constant.as_ref().map_or("none".into(), rational_text),
            if a.passes() { "ok" } else { "off" }
        )
        .unwrap();
        rows.push(json!({
            "type": t.as_str(),
            "epsilon": c.epsilon,
            "omega": c.omega.to_string(),
            "omega_coefficients": c.omega.coeffs().iter().map(rational_text).collect::<Vec<_>>(),
            "expected": c.expected.to_string(),
            "holds": c.holds(),
            "constant": c.constant.as_ref().map(rational_text),
            "degree_matches": c.degree_matches(),
            "remainder": c.remainder.to_string(),
            "weight_audit": {
                "passes": a.passes(),
                "weights": a.weights,
                "z_degree": a.z_degree,
                "off_weight": a.off_weight.iter().map(|(e, w)| json!({"monomial": monomial_text(e), "weight": w})).collect::<Vec<_>>(),
            },
        }));
    }
    Ok(Report::new(Status::from_bool(ok), json!({"rows": rows}), text))
}

fn catalog() -> Result<Report, CliError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for t in TypeLabel::ALL {
        let p = t.presentation().map_err(CliError::internal)?;
        let n = p.normalize();
        writeln!(
            text,
            "{:<7} {:>3} relations, {} generator classes",
            t.as_str(),
            p.relations().len(),
            n.generators().len()
        )
        .unwrap();
        rows.push(json!({
            "type": t.as_str(),
            "family": format!("{:?}", t.family()),
            "relations": p.relations().len(),
            "generator_classes": n.generators().len(),
            "normalized_relations": n.relations().len(),
        }));
    }
    Ok(Report::new(Status::Holds, json!({"types": rows}), text))
}
