//! The five subcommands. Each returns `Ok(true)` when every check passed,
//! `Ok(false)` when a check failed, and `Err` for input or usage problems.

use std::path::{Path, PathBuf};
use std::time::Instant;

use tetreq_core::bruhat;
use tetreq_core::geometry;
use tetreq_core::golden;
use tetreq_core::rng::SplitMix64;
use tetreq_core::tensor::{CMatrix, ModelBundle};
use tetreq_core::verify::{self, CheckResult, UnitarityCheck};
use tetreq_core::word::{self, OpWord};

use crate::formats::{parse_arrangement, parse_tensor, TensorFile, TensorKind};
use crate::report::RunReport;
use crate::{CliError, WhichCheck};

pub fn bruhat(n: u32, k: u32, guard: u64) -> Result<bool, CliError> {
    let c = bruhat::subsets(n, k)?;
    let a = bruhat::enumerate_admissible_with_guard(n, k, guard)?;
    let classes = bruhat::bruhat_classes_with_guard(n, k, guard)?;
    let mut report = RunReport::new(format!("bruhat --n {n} --k {k}"));
    report.note(format!("|C({n},{k})| = {}", c.len()));
    report.note(format!("|A({n},{k})| = {}", a.len()));
    report.note(format!("|B({n},{k})| = {}", classes.len()));
    for class in &classes {
        report.note(format!(
            "class {} ({} member{})",
            class.representative.serialize(),
            class.members.len(),
            if class.members.len() == 1 { "" } else { "s" }
        ));
    }
    print!("{}", report.render());
    Ok(true)
}

fn derive_full_report(report: &mut RunReport) -> Result<Vec<String>, CliError> {
    let generated = word::generate_equations()?;
    let mut failures = Vec::new();

    report.note("starting configurations:");
    for config in word::starting_configs() {
        let resolved = generated
            .cases
            .iter()
            .find(|c| c.case == config.name)
            .map(|c| format!("reverses as {}", c.word));
        let status = match resolved {
            Some(s) => s,
            None => "no complete reversal".to_string(),
        };
        report.note(format!("  {:3} {}  {}", config.name, config.render(), status));
    }

    report.note("");
    report.note("equations:");
    for eq in &generated.equations {
        report.note(format!("  {}", eq.render()));
    }
    failures.extend(golden::diff_equations(
        &generated.equations,
        "equations_raw.txt",
        golden::EQUATIONS_RAW,
    )?);

    report.note("");
    report.note("shorthand form:");
    let shorthand = word::normalize_to_shorthand(&generated.equations)?;
    let sh_lines: Vec<String> = shorthand.iter().map(|e| e.render()).collect();
    for line in &sh_lines {
        report.note(format!("  {line}"));
    }
    failures.extend(golden::diff_lines(
        &sh_lines,
        "equations_shorthand.txt",
        golden::EQUATIONS_SHORTHAND,
    ));
    let collapsed = word::collapse_substitution(&shorthand);
    let all_same = collapsed.windows(2).all(|w| w[0] == w[1]);
    report.note(format!(
        "under S~^-1 -> S all lines collapse to: {}",
        collapsed.first().cloned().unwrap_or_default()
    ));
    if !all_same {
        failures.push("collapse substitution left distinct lines".to_string());
    }

    report.note("");
    report.note("geometric form:");
    let geo_lines: Vec<String> = generated
        .equations
        .iter()
        .map(|e| word::geometric_form(e).map(|g| g.render()))
        .collect::<Result<_, _>>()?;
    for line in &geo_lines {
        report.note(format!("  {line}"));
    }
    failures.extend(golden::diff_lines(
        &geo_lines,
        "equations_geometric.txt",
        golden::EQUATIONS_GEOMETRIC,
    ));

    report.note("");
    let one_six = generated
        .equations
        .iter()
        .find(|e| e.name == "1,6")
        .ok_or_else(|| CliError::Internal("equation 1,6 missing".into()))?;
    let classic = word::classic_form(one_six)?;
    report.note(format!("classic form: {}", classic.render()));
    failures.extend(golden::diff_lines(&[classic.render()], "classic.txt", golden::CLASSIC));
    Ok(failures)
}

pub fn derive(exhaustive: bool, shorthand_only: bool, classic_only: bool) -> Result<bool, CliError> {
    let mut report = RunReport::new("derive");
    let mut failures: Vec<String> = Vec::new();

    if shorthand_only {
        let generated = word::generate_equations()?;
        let shorthand = word::normalize_to_shorthand(&generated.equations)?;
        let lines: Vec<String> = shorthand.iter().map(|e| e.render()).collect();
        for line in &lines {
            report.note(line.clone());
        }
        failures.extend(golden::diff_lines(
            &lines,
            "equations_shorthand.txt",
            golden::EQUATIONS_SHORTHAND,
        ));
    } else if classic_only {
        let generated = word::generate_equations()?;
        let one_six = generated
            .equations
            .iter()
            .find(|e| e.name == "1,6")
            .ok_or_else(|| CliError::Internal("equation 1,6 missing".into()))?;
        let classic = word::classic_form(one_six)?;
        report.note(classic.render());
        failures.extend(golden::diff_lines(&[classic.render()], "classic.txt", golden::CLASSIC));
    } else {
        failures.extend(derive_full_report(&mut report)?);
    }

    if exhaustive {
        let start = Instant::now();
        let scan = word::exhaustive_scan()?;
        report.note("");
        report.note(format!(
            "exhaustive scan: {} words, {} reversible, {} groups",
            scan.words_tested,
            scan.words_with_complete_derivations,
            scan.groups.len()
        ));
        for g in &scan.groups {
            report.note(format!(
                "  group {} ({} members, {} derivations each)",
                g.representative, g.members, g.derivations_per_word
            ));
        }
        report.push(
            CheckResult::new(
                "scan groups == 8",
                (scan.groups.len() as f64 - 8.0).abs(),
                0.0,
            ),
            start.elapsed().as_secs_f64(),
        );
    }

    for f in &failures {
        report.note(format!("golden mismatch: {f}"));
        report.push(CheckResult::new("golden match", 1.0, 0.0), 0.0);
    }
    if failures.is_empty() {
        report.push(CheckResult::new("golden match", 0.0, 0.0), 0.0);
    }
    print!("{}", report.render());
    Ok(report.overall_pass())
}

pub struct VerifyArgs {
    pub which: WhichCheck,
    pub s: Option<PathBuf>,
    pub stilde: Option<PathBuf>,
    pub q: Option<PathBuf>,
    pub r: Option<PathBuf>,
    pub mfam: Option<PathBuf>,
    pub m: Option<usize>,
    pub tol: f64,
}

struct LoadedTensors {
    s: Option<(usize, CMatrix)>,
    stilde: Option<(usize, CMatrix)>,
    q: Option<(usize, CMatrix)>,
    pairwise: Option<verify::PairwiseR>,
    family: Option<verify::RepFamily>,
}

fn load_tensors(args: &VerifyArgs) -> Result<LoadedTensors, CliError> {
    let read = |path: &Path| -> Result<TensorFile, CliError> {
        let text = std::fs::read_to_string(path)?;
        parse_tensor(&path.display().to_string(), &text)
    };
    let expect_operator = |file: TensorFile,
                           want: TensorKind,
                           flag: &str|
     -> Result<(usize, CMatrix), CliError> {
        match file {
            TensorFile::Operator { kind, m, matrix } if kind == want => Ok((m, matrix)),
            _ => Err(CliError::Parse(format!("--{flag} expects a tensor of kind {want:?}"))),
        }
    };
    let mut out = LoadedTensors { s: None, stilde: None, q: None, pairwise: None, family: None };
    if let Some(p) = &args.s {
        out.s = Some(expect_operator(read(p)?, TensorKind::S, "s")?);
    }
    if let Some(p) = &args.stilde {
        out.stilde = Some(expect_operator(read(p)?, TensorKind::Stilde, "stilde")?);
    }
    if let Some(p) = &args.q {
        out.q = Some(expect_operator(read(p)?, TensorKind::Q, "q")?);
    }
    if let Some(p) = &args.r {
        match read(p)? {
            TensorFile::Pairwise(pr) => out.pairwise = Some(pr),
            _ => return Err(CliError::Parse("--r expects a tensor of kind R".into())),
        }
    }
    if let Some(p) = &args.mfam {
        match read(p)? {
            TensorFile::Family(fam) => out.family = Some(fam),
            _ => return Err(CliError::Parse("--mfam expects a tensor of kind M".into())),
        }
    }
    if let Some(m) = args.m {
        let mismatch = out.s.iter().chain(&out.stilde).chain(&out.q).any(|(fm, _)| *fm != m);
        if mismatch {
            return Err(CliError::Parse(format!("--m {m} does not match the supplied files")));
        }
    }
    Ok(out)
}

fn bundle_from(loaded: &LoadedTensors) -> Result<ModelBundle, CliError> {
    let (m, s) = loaded
        .s
        .clone()
        .ok_or_else(|| CliError::Usage("this check needs --s FILE".into()))?;
    let stilde = match &loaded.stilde {
        Some((sm, t)) => {
            if *sm != m {
                return Err(CliError::Parse("S and S~ dimensions differ".into()));
            }
            Some(t.clone())
        }
        None => None,
    };
    let q = match &loaded.q {
        Some((qm, t)) => {
            if *qm != m {
                return Err(CliError::Parse("S and Q dimensions differ".into()));
            }
            Some(t.clone())
        }
        None => None,
    };
    Ok(ModelBundle::new(m, s, stilde, q)?)
}

pub fn verify(args: VerifyArgs) -> Result<bool, CliError> {
    let loaded = load_tensors(&args)?;
    let tol = args.tol;
    let mut report = RunReport::new(format!("verify --which {:?} --tol {tol:e}", args.which));
    match args.which {
        WhichCheck::Eight => {
            let bundle = bundle_from(&loaded)?;
            report.time(|| verify::verify_eight(&bundle, tol))?;
        }
        WhichCheck::Classic => {
            let (m, s) = loaded
                .s
                .clone()
                .ok_or_else(|| CliError::Usage("--which classic needs --s FILE".into()))?;
            report.time(|| verify::verify_classic(&s, m, tol))?;
        }
        WhichCheck::Ybe => {
            let pr = loaded
                .pairwise
                .clone()
                .ok_or_else(|| CliError::Usage("--which ybe needs --r FILE".into()))?;
            report.time(|| verify::verify_ybe(&pr.r12[0], pr.n, tol))?;
        }
        WhichCheck::Obstruction => {
            if let Some(fam) = &loaded.family {
                let pr = loaded.pairwise.clone().ok_or_else(|| {
                    CliError::Usage("matrix-level obstruction needs --r FILE".into())
                })?;
                if pr.n * pr.n != fam.d * fam.d {
                    // the obstruction matrix runs over family labels
                    return Err(CliError::Parse(format!(
                        "R must be d^2 x d^2 with d = {} (family size)",
                        fam.d
                    )));
                }
                report.time(|| verify::verify_obstruction_yb(fam, &pr.r12[0], tol))?;
            } else {
                let pr = loaded.pairwise.clone().ok_or_else(|| {
                    CliError::Usage("--which obstruction needs --r FILE (and --s FILE)".into())
                })?;
                let (_, s) = loaded
                    .s
                    .clone()
                    .ok_or_else(|| CliError::Usage("--which obstruction needs --s FILE".into()))?;
                let stilde = loaded.stilde.clone().map(|(_, t)| t);
                report.time(|| {
                    verify::verify_obstruction_tetra(&pr, &s, stilde.as_ref(), tol)
                })?;
            }
        }
        WhichCheck::Unitarity => {
            let mut ran = false;
            if let Some(pr) = &loaded.pairwise {
                report.time(|| {
                    verify::verify_unitarity(
                        UnitarityCheck::RLevel { r: &pr.r12[0], d: pr.n },
                        tol,
                    )
                })?;
                ran = true;
            }
            if let Some((m, s)) = &loaded.s {
                let stilde = match &loaded.stilde {
                    Some((_, t)) => t.clone(),
                    None => tetreq_core::tensor::stilde_from_unitarity(s, *m)?,
                };
                report.time(|| {
                    verify::verify_unitarity(
                        UnitarityCheck::SLevel { s, stilde: &stilde, m: *m },
                        tol,
                    )
                })?;
                ran = true;
            }
            if let Some((m, q)) = &loaded.q {
                report
                    .time(|| verify::verify_unitarity(UnitarityCheck::QLevel { q, m: *m }, tol))?;
                ran = true;
            }
            if !ran {
                return Err(CliError::Usage(
                    "--which unitarity needs at least one of --r, --s, --q".into(),
                ));
            }
        }
        WhichCheck::Collapse => {
            let (m, s) = loaded
                .s
                .clone()
                .ok_or_else(|| CliError::Usage("--which collapse needs --s FILE".into()))?;
            let start = Instant::now();
            let collapse = verify::collapse_check(&s, m, tol)?;
            let seconds = start.elapsed().as_secs_f64();
            for check in collapse.letter.checks.clone() {
                report.push(check, seconds / 4.0);
            }
            report.push(
                CheckResult::new(
                    "collapse words identical",
                    if collapse.words_identical { 0.0 } else { 1.0 },
                    0.0,
                ),
                0.0,
            );
            if collapse.collapses() {
                report.note("the eight equations collapse to a single equation (system collapses)");
            }
        }
        WhichCheck::Lawrence => {
            let (m, qy) = loaded
                .q
                .clone()
                .ok_or_else(|| CliError::Usage("--which lawrence needs --q FILE".into()))?;
            let bundle = verify::lawrence_construct(&qy, m, tol.min(1e-12))?;
            report.note(format!("constructed S = Q01 Q02 Q12 on m^3 with m = {m}"));
            report.time(|| verify::verify_eight(&bundle, tol))?;
        }
    }
    print!("{}", report.render());
    Ok(report.overall_pass())
}

pub fn sweep(path: &Path) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(path)?;
    let arr = parse_arrangement(&path.display().to_string(), &text)?;
    let mut report = RunReport::new(format!("sweep --arrangement {}", path.display()));
    let sectors = match geometry::classify_orders(&arr) {
        Ok(s) => s,
        Err(geometry::GeomError::Inadmissible) => {
            report.note("a sweep order translates to an inadmissible chain;");
            report.note("the line labeling does not match the betweenness structure");
            report.push(CheckResult::new("orders admissible", 1.0, 0.0), 0.0);
            print!("{}", report.render());
            return Ok(false);
        }
        Err(e) => return Err(CliError::Parse(e.to_string())),
    };
    let mut classes: Vec<&str> = sectors.iter().map(|s| s.class_representative.as_str()).collect();
    classes.sort_unstable();
    classes.dedup();
    report.note(format!("{} sectors, {} distinct classes", sectors.len(), classes.len()));
    for s in &sectors {
        let order = s
            .order
            .iter()
            .map(|p| format!("{}{}", p.first(), p.second()))
            .collect::<Vec<_>>()
            .join(".");
        report.note(format!(
            "  [{:.4}, {:.4}) order {} chain {} class {} letters {}",
            s.theta_lo,
            s.theta_hi,
            order,
            bruhat::serialize_chain(&s.chain),
            s.class_representative,
            OpWord(s.letters.clone()),
        ));
    }
    report.push(CheckResult::new("orders admissible", 0.0, 0.0), 0.0);
    print!("{}", report.render());
    Ok(report.overall_pass())
}

fn identity_battery(report: &mut RunReport) -> Result<(), CliError> {
    let bundle = ModelBundle::identity(2)?;
    report.time(|| verify::verify_eight(&bundle, 0.0))?;
    report.time(|| verify::verify_classic(&CMatrix::identity(8), 2, 0.0))?;
    report.time(|| verify::verify_ybe(&CMatrix::identity(4), 2, 0.0))?;
    let s = CMatrix::identity(8);
    let q = CMatrix::identity(4);
    report.time(|| {
        verify::verify_unitarity(UnitarityCheck::SLevel { s: &s, stilde: &s, m: 2 }, 0.0)
    })?;
    report.time(|| verify::verify_unitarity(UnitarityCheck::QLevel { q: &q, m: 2 }, 0.0))?;
    report.time(|| verify::verify_unitarity(UnitarityCheck::RLevel { r: &q, d: 2 }, 0.0))?;
    Ok(())
}

pub fn selfcheck(seed: u64) -> Result<bool, CliError> {
    let mut report = RunReport::new("selfcheck");
    report.seed = Some(seed);

    // combinatorics
    let start = Instant::now();
    let classes = bruhat::bruhat_classes(4, 2)?;
    report.push(
        CheckResult::new("bruhat |B(4,2)| == 8", (classes.len() as f64) - 8.0, 0.0),
        start.elapsed().as_secs_f64(),
    );

    // all golden documents
    let start = Instant::now();
    let generated = word::generate_equations()?;
    let mut mismatches =
        golden::diff_equations(&generated.equations, "equations_raw.txt", golden::EQUATIONS_RAW)?;
    let shorthand = word::normalize_to_shorthand(&generated.equations)?;
    let sh: Vec<String> = shorthand.iter().map(|e| e.render()).collect();
    mismatches.extend(golden::diff_lines(&sh, "equations_shorthand.txt", golden::EQUATIONS_SHORTHAND));
    let geo: Vec<String> = generated
        .equations
        .iter()
        .map(|e| word::geometric_form(e).map(|g| g.render()))
        .collect::<Result<_, _>>()?;
    mismatches.extend(golden::diff_lines(&geo, "equations_geometric.txt", golden::EQUATIONS_GEOMETRIC));
    let one_six = generated.equations.iter().find(|e| e.name == "1,6").unwrap();
    let classic = word::classic_form(one_six)?;
    mismatches.extend(golden::diff_lines(&[classic.render()], "classic.txt", golden::CLASSIC));
    for m in &mismatches {
        report.note(format!("golden mismatch: {m}"));
    }
    report.push(
        CheckResult::new("golden documents", mismatches.len() as f64, 0.0),
        start.elapsed().as_secs_f64(),
    );

    // exhaustive scan
    let start = Instant::now();
    let scan = word::exhaustive_scan()?;
    report.push(
        CheckResult::new("scan groups == 8", (scan.groups.len() as f64) - 8.0, 0.0),
        start.elapsed().as_secs_f64(),
    );

    // identity bundle is exact
    identity_battery(&mut report)?;

    // seeded random checks at m = 2
    let mut rng = SplitMix64::new(seed);
    for round in 0..3 {
        let s = CMatrix::random(8, &mut rng);
        let start = Instant::now();
        let collapse = verify::collapse_check(&s, 2, 1e-10)?;
        let letter_worst = collapse.letter.max_residual();
        report.push(
            CheckResult::new(format!("collapse letters (round {round})"), letter_worst, 1e-10),
            start.elapsed().as_secs_f64(),
        );
        let bundle = ModelBundle::new(2, s.clone(), None, None)?;
        let mats = verify::eight_residual_matrices(&bundle)?;
        let mut spread = 0.0f64;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                spread = spread.max(mats[i].1.max_abs_diff(&mats[j].1));
            }
        }
        report.push(
            CheckResult::new(format!("collapse residual spread (round {round})"), spread, 1e-10),
            0.0,
        );
        let classic_res = verify::verify_classic(&s, 2, 1e-10)?.max_residual();
        let eight_16 = verify::verify_eight(&bundle, 1e-10)?.checks[0].residual;
        report.push(
            CheckResult::new(
                format!("cross-form consistency (round {round})"),
                (classic_res - eight_16).abs(),
                1e-12,
            ),
            0.0,
        );
    }

    // the Q-built bundle passes
    let start = Instant::now();
    let p = verify::swap_legs(2);
    let bundle = verify::lawrence_construct(&p, 2, 1e-12)?;
    let rep = verify::verify_eight(&bundle, 1e-10)?;
    report.push(
        CheckResult::new("q-built bundle", rep.max_residual(), 1e-10),
        start.elapsed().as_secs_f64(),
    );

    // geometry reference fixture
    let start = Instant::now();
    let arr = geometry::reference_arrangement();
    let sectors = geometry::classify_orders(&arr)
        .map_err(|e| CliError::Internal(format!("reference arrangement: {e}")))?;
    let mut reps: Vec<&str> = sectors.iter().map(|s| s.class_representative.as_str()).collect();
    reps.sort_unstable();
    reps.dedup();
    report.push(
        CheckResult::new("reference classes == 8", (reps.len() as f64) - 8.0, 0.0),
        start.elapsed().as_secs_f64(),
    );
    let dir_1r = geometry::reference_directions()
        .iter()
        .find(|(n, _)| *n == "1r")
        .unwrap()
        .1;
    let letters = geometry::equation_from_direction(&arr, dir_1r)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let all_stilde = letters
        .iter()
        .all(|l| l.kind == tetreq_core::word::LetterKind::Stilde);
    report.push(
        CheckResult::new("direction 1r all S~", if all_stilde { 0.0 } else { 1.0 }, 0.0),
        0.0,
    );

    print!("{}", report.render());
    Ok(report.overall_pass())
}
