//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Runs without the libtest harness so the
//! lines always reach the terminal.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use covpath_core::geom::orientation;
use covpath_core::generators::rng_for;
use covpath_core::{
    check_invariant_trace, generate, min_link_path, segment_bound, solve, to_svg, verify, CaseId, DegeneracyMode,
    Error, GenKind, GenSpec, Orientation, OracleMode, PathDocument, Point, PointSet, RenderSpec, Solution,
    SolveOptions, TraceOverlay, VerifyMode,
};
use rand_core::Rng;

struct Verdict {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn traced(mode: DegeneracyMode) -> SolveOptions {
    SolveOptions { degeneracy_mode: mode, emit_trace: true, ..SolveOptions::default() }
}

fn ints(coords: &[(i64, i64)]) -> PointSet {
    PointSet::from_distinct(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
}

fn general_position(pts: &[Point]) -> bool {
    let n = pts.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| (j + 1..n).all(|k| orientation(&pts[i], &pts[j], &pts[k]) != Orientation::Collinear))
    })
}

/// A solved instance kept for the later criteria.
struct Run {
    label: String,
    ps: PointSet,
    sol: Solution,
}

struct Corpus {
    general: Vec<Run>,
    degenerate: Vec<Run>,
}

fn general_corpus(failures: &mut Vec<String>) -> Vec<Run> {
    let kinds = [GenKind::UniformSquare, GenKind::ConvexPosition, GenKind::Clustered];
    let mut rng = rng_for(0xacce);
    let mut runs = Vec::new();
    for i in 0..1000u64 {
        let kind = kinds[i as usize % 3];
        let n = 1 + (rng.next_u64() % 200) as usize;
        let label = format!("{} n={n} seed={i}", kind.name());
        let ps = generate(&GenSpec::new(kind, n, i)).unwrap();
        match solve(&ps, &traced(DegeneracyMode::Strict)) {
            Ok(sol) => runs.push(Run { label, ps, sol }),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    runs
}

fn degenerate_corpus(failures: &mut Vec<String>) -> Vec<Run> {
    let mut rng = rng_for(0xde9e);
    let mut runs = Vec::new();
    for kind in [GenKind::Grid, GenKind::CollinearHeavy] {
        for seed in 0..200u64 {
            let n = 4 + (rng.next_u64() % 97) as usize;
            let label = format!("{} n={n} seed={seed}", kind.name());
            let ps = generate(&GenSpec::new(kind, n, seed)).unwrap();
            match solve(&ps, &traced(DegeneracyMode::Strict)) {
                Ok(sol) => runs.push(Run { label, ps, sol }),
                Err(Error::DegenerateWindowUnsolvable { position }) => {
                    failures.push(format!("{label}: strict solve stuck at window {position}"));
                    runs.push(Run { label, sol: solve(&ps, &traced(DegeneracyMode::Permissive)).unwrap(), ps });
                }
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        }
    }
    runs
}

fn bound_and_correctness(runs: &[Run], setup: Vec<String>) -> Verdict {
    let mut bad = setup;
    for r in runs {
        let report = verify(&r.ps, &r.sol.path, VerifyMode::Strict);
        if !report.passes(VerifyMode::Strict) {
            bad.push(format!("{}: strict verification failed", r.label));
        } else if r.sol.path.segment_count() > segment_bound(r.ps.len()) {
            bad.push(format!("{}: {} segments", r.label, r.sol.path.segment_count()));
        } else if !r.sol.warnings.is_empty() {
            bad.push(format!("{}: {} warning(s)", r.label, r.sol.warnings.len()));
        }
    }
    Verdict {
        id: 1,
        name: "bound and strict correctness, 1000 instances",
        pass: bad.is_empty() && runs.len() >= 1000,
        detail: summary(runs.len(), &bad),
    }
}

fn degenerate_inputs(runs: &[Run], setup: Vec<String>) -> Verdict {
    let mut bad = setup;
    let (mut windows, mut fallbacks) = (0, 0);
    for r in runs {
        windows += r.sol.stats.windows;
        fallbacks += r.sol.stats.fallbacks;
        let report = verify(&r.ps, &r.sol.path, VerifyMode::Standard);
        let fine = report.covered && report.proper_crossings.is_empty();
        if !fine || (r.sol.warnings.is_empty() && !report.within_bound) {
            bad.push(format!("{}: standard verification failed", r.label));
        }
    }
    let rate = fallbacks as f64 / windows.max(1) as f64;
    if rate > 0.01 {
        bad.push(format!("fallback rate {:.3}%", rate * 100.0));
    }
    Verdict {
        id: 2,
        name: "degenerate inputs, standard mode",
        pass: bad.is_empty() && runs.len() >= 400,
        detail: format!("{}; windows {windows}, fallbacks {fallbacks}", summary(runs.len(), &bad)),
    }
}

/// Lattice windows `(x, y)` for x = 0..7, the anchor first. Solving the
/// eight points makes the first point the anchor of one window.
const FIXTURES: [(CaseId, [i64; 8]); 18] = [
    (CaseId::C1_1, [-3, -6, -4, 0, 5, -6, 1, 0]),
    (CaseId::C1_2, [0, 4, -3, 1, 2, 2, -2, -3]),
    (CaseId::C1_3By, [-4, -6, -3, -2, 5, -1, -6, -2]),
    (CaseId::C1_3ByPrime, [-2, 1, 2, 5, 2, 0, -6, 4]),
    (CaseId::C2_1, [3, 6, -5, -5, -3, 3, 2, 2]),
    (CaseId::C2_2LPrime, [6, 4, -1, 6, 0, 1, -2, -2]),
    (CaseId::C2_2RPrime, [4, -6, 1, -1, 5, 6, 3, -5]),
    (CaseId::C2_2V, [1, 6, -2, 6, -3, 5, 1, 0]),
    (CaseId::C3a1Cy, [-5, 3, 1, 5, -4, -4, 2, -6]),
    (CaseId::C3a1CyPrime, [0, -5, -4, 1, -6, 5, 4, 3]),
    (CaseId::C3a2, [0, 6, -4, 1, 4, -3, 0, 5]),
    (CaseId::C3bLPrime, [-3, -4, -6, -4, -5, -1, -2, 1]),
    (CaseId::C3bRPrime, [-2, 5, -6, 0, -5, -3, -3, -2]),
    (CaseId::C3bAl, [-5, 3, -6, 1, 1, 6, 0, 3]),
    (CaseId::C3bZRight, [6, -6, 1, 6, 0, -1, 2, 1]),
    (CaseId::C3bD, [2, 1, -4, -2, -6, 4, 3, -4]),
    (CaseId::C3bE, [2, -4, -2, 1, 3, 0, 3, -5]),
    (CaseId::C3bF, [-2, -6, -5, 3, 3, -6, 5, 3]),
];

fn fixture(ys: &[i64; 8]) -> PointSet {
    let coords: Vec<(i64, i64)> = ys.iter().enumerate().map(|(x, &y)| (x as i64, y)).collect();
    ints(&coords)
}

fn case_coverage(corpus: &Corpus) -> Verdict {
    let mut fired = BTreeSet::new();
    for r in corpus.general.iter().chain(&corpus.degenerate) {
        fired.extend(r.sol.traces.iter().map(|t| t.case_id));
    }
    let from_corpus = fired.len();
    let mut bad = Vec::new();
    for (case, ys) in &FIXTURES {
        let ps = fixture(ys);
        let sol = solve(&ps, &traced(DegeneracyMode::Strict)).unwrap();
        let first = sol.traces.iter().find(|t| t.anchor.is_some()).map(|t| t.case_id);
        if first != Some(*case) {
            bad.push(format!("fixture {} fired {:?}", case.label(), first.map(CaseId::label)));
        }
        if !verify(&ps, &sol.path, VerifyMode::Strict).passes(VerifyMode::Strict) {
            bad.push(format!("fixture {} fails strict verification", case.label()));
        }
        fired.extend(sol.traces.iter().map(|t| t.case_id));
    }
    let required = CaseId::ALL.iter().filter(|c| **c != CaseId::DegenSolver);
    let missing: Vec<&str> = required.filter(|c| !fired.contains(c)).map(|c| c.label()).collect();
    if !missing.is_empty() {
        bad.push(format!("unreached: {}", missing.join(", ")));
    }
    Verdict {
        id: 3,
        name: "every case id fires",
        pass: bad.is_empty(),
        detail: format!(
            "{} ids from the corpus, {} with fixtures; DEGEN-SOLVER {}; {}",
            from_corpus,
            fired.len(),
            if fired.contains(&CaseId::DegenSolver) { "fired" } else { "not fired" },
            if bad.is_empty() { "ok".to_string() } else { bad.join("; ") }
        ),
    }
}

fn nine_dots() -> (Verdict, PointSet) {
    let grid = generate(&GenSpec::new(GenKind::Grid, 9, 0)).unwrap();
    let started = Instant::now();
    let res = min_link_path(&grid, OracleMode::CrossingAllowed).unwrap();
    let took = started.elapsed();
    let covers = verify(&grid, &covpath_core::CoveringPath::new(res.witness.clone()), VerifyMode::Standard).covered;
    let pass = res.min_segments == 4 && res.refuted == [3] && res.complete && covers && took < Duration::from_secs(30);
    let detail = format!(
        "min {} refuted {:?} complete {} witness covers {} in {:.2}s",
        res.min_segments,
        res.refuted,
        res.complete,
        covers,
        took.as_secs_f64()
    );
    (Verdict { id: 4, name: "nine-dot oracle", pass, detail }, grid)
}

fn lower_bound() -> (Verdict, Vec<PointSet>) {
    let mut rng = rng_for(0x10b0);
    let mut instances = Vec::new();
    let mut seed = 0u64;
    while instances.len() < 100 {
        let n = 2 + (rng.next_u64() % 7) as usize;
        let ps = generate(&GenSpec::new(GenKind::UniformSquare, n, seed)).unwrap();
        seed += 1;
        if general_position(ps.points()) {
            instances.push(ps);
        }
    }
    let (mut bad, mut compared_plane, mut compared_crossing) = (Vec::new(), 0, 0);
    for (i, ps) in instances.iter().enumerate() {
        let n = ps.len();
        let crossing = min_link_path(ps, OracleMode::CrossingAllowed).unwrap();
        if crossing.min_segments < n.div_ceil(2) {
            bad.push(format!("instance {i}: crossing min {} below {}", crossing.min_segments, n.div_ceil(2)));
        }
        let planner = solve(ps, &SolveOptions::default()).unwrap().path.segment_count();
        if crossing.complete {
            compared_crossing += 1;
            if planner < crossing.min_segments {
                bad.push(format!("instance {i}: planner {planner} below crossing min {}", crossing.min_segments));
            }
        }
        let plane = min_link_path(ps, OracleMode::Plane).unwrap();
        if plane.min_segments < crossing.min_segments {
            bad.push(format!("instance {i}: plane {} below crossing {}", plane.min_segments, crossing.min_segments));
        }
        if plane.complete {
            compared_plane += 1;
            if planner < plane.min_segments {
                bad.push(format!("instance {i}: planner {planner} below plane min {}", plane.min_segments));
            }
        }
    }
    let detail = format!(
        "{}; planner vs complete plane results: {compared_plane}, vs crossing results: {compared_crossing}",
        summary(instances.len(), &bad)
    );
    (Verdict { id: 5, name: "lower-bound sanity, n in [2, 8]", pass: bad.is_empty(), detail }, instances)
}

fn invariant_replay(corpus: &Corpus) -> Verdict {
    let mut bad = Vec::new();
    let runs: Vec<&Run> = corpus.general.iter().chain(&corpus.degenerate).collect();
    for r in &runs {
        if let Err(v) = check_invariant_trace(&r.sol.traces, &r.ps) {
            bad.push(format!("{}: iteration {}: {}", r.label, v.index, v.message));
        }
    }
    Verdict { id: 6, name: "invariant replay", pass: bad.is_empty(), detail: summary(runs.len(), &bad) }
}

fn best_time(n: usize) -> (Duration, usize) {
    let ps = generate(&GenSpec::new(GenKind::UniformSquare, n, 1)).unwrap();
    let mut best = Duration::MAX;
    let mut segments = 0;
    for _ in 0..2 {
        let started = Instant::now();
        let sol = solve(&ps, &SolveOptions::default()).unwrap();
        best = best.min(started.elapsed());
        segments = sol.path.segment_count();
    }
    (best, segments)
}

fn scaling() -> Verdict {
    let (one, s1) = best_time(1_000_000);
    let (two, s2) = best_time(2_000_000);
    let ratio = two.as_secs_f64() / one.as_secs_f64();
    let bounded = s1 <= segment_bound(1_000_000) && s2 <= segment_bound(2_000_000);
    Verdict {
        id: 7,
        name: "performance scaling",
        pass: one <= Duration::from_secs(10) && ratio <= 2.4 && bounded,
        detail: format!("1e6 in {:.2}s, 2e6 in {:.2}s, ratio {ratio:.2}", one.as_secs_f64(), two.as_secs_f64()),
    }
}

fn outputs(ps: &PointSet) -> (String, Vec<u8>) {
    let sol = solve(ps, &traced(DegeneracyMode::Permissive)).unwrap();
    let json = PathDocument::from_solution(&sol, true).to_json();
    let spec = RenderSpec { show_aux: true, label_roles: true, ..RenderSpec::default() };
    let overlay = TraceOverlay { traces: &sol.traces, frame: &sol.frame };
    (json, to_svg(ps, &sol.path, Some(overlay), &spec))
}

fn determinism(corpus: &Corpus, grid: &PointSet, small: &[PointSet]) -> Verdict {
    let mut inputs: Vec<&PointSet> = corpus.general.iter().chain(&corpus.degenerate).map(|r| &r.ps).collect();
    inputs.push(grid);
    inputs.extend(small);
    let fixtures: Vec<PointSet> = FIXTURES.iter().map(|(_, ys)| fixture(ys)).collect();
    inputs.extend(&fixtures);
    let mut bad = Vec::new();
    for (i, ps) in inputs.iter().enumerate() {
        let regenerated = PointSet::from_distinct(ps.points().to_vec());
        if outputs(ps) != outputs(&regenerated) {
            bad.push(format!("input {i}: outputs differ"));
        }
    }
    Verdict { id: 8, name: "determinism of path JSON and SVG", pass: bad.is_empty(), detail: summary(inputs.len(), &bad) }
}

fn summary(total: usize, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{total} checked, 0 failures"),
        Some(first) => format!("{total} checked, {} failures, first: {first}", bad.len()),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut general_setup = Vec::new();
    let mut degenerate_setup = Vec::new();
    let corpus = Corpus {
        general: general_corpus(&mut general_setup),
        degenerate: degenerate_corpus(&mut degenerate_setup),
    };
    let mut verdicts = vec![
        bound_and_correctness(&corpus.general, general_setup),
        degenerate_inputs(&corpus.degenerate, degenerate_setup),
        case_coverage(&corpus),
    ];
    let (v, grid) = nine_dots();
    verdicts.push(v);
    let (v, small) = lower_bound();
    verdicts.push(v);
    verdicts.push(invariant_replay(&corpus));
    verdicts.push(scaling());
    verdicts.push(determinism(&corpus, &grid, &small));

    for v in &verdicts {
        println!("{} criterion {}: {} ({})", if v.pass { "PASS" } else { "FAIL" }, v.id, v.name, v.detail);
    }
    let passed = verdicts.iter().filter(|v| v.pass).count();
    println!("{passed}/{} criteria passed in {:.1}s", verdicts.len(), started.elapsed().as_secs_f64());
    if passed == verdicts.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
