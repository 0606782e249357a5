//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use negset::report::session_text;
use negset::session::{parse_session, run_session, EntryOutcome};
use negset_core::oracle::{
    all_contradiction_specs, check_law, verify_fixture, Expectation, LawId, SweepConfig, Witness,
};
use negset_core::{
    resolve_odot, ContradictionSpec, FailureReason, FiniteSet, InclusionMode, NegotiationSet,
    ObjectId, ResolutionOutcome, ResolutionPolicy, Universe,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const TRIP: &str = "\
universe a b c d e f g h i k l
agent A = [{a d} {a d f g h}]
agent B = [{a b d} {a b d f i l}]
agent C = [{a h} {a d h k}]
let S1 = (A odot B) odot C
let S2 = (A oplus B) oplus C
let AB = A oplus B
";

fn ns(u: &Universe, n: &str, p: &str) -> NegotiationSet {
    NegotiationSet::from_names(u, n.split_whitespace(), p.split_whitespace()).unwrap()
}

fn bound(script: &str, index: usize) -> String {
    let report = run_session(&parse_session(script).unwrap());
    match &report.entries[index].outcome {
        EntryOutcome::Bound { value, .. } => value.to_string(),
        other => panic!("statement {index}: {other:?}"),
    }
}

fn criterion_1() -> Outcome {
    let script = parse_session(TRIP).map_err(|e| e.to_string())?;
    let text = session_text(&run_session(&script));
    let first = text.lines().next().unwrap_or_default();
    ensure!(
        first == "let S1 = [{a},{a,b,d,f,g,h,i,k,l}]",
        "got {first:?}"
    );
    let chain = parse_session(
        "universe a b c d e f g h i k l\n\
         agent A = [{a d} {a d f g h}]\n\
         agent B = [{a b d} {a b d f i l}]\n\
         agent C = [{a h} {a d h k}]\n\
         let S1 = (A odot B) odot C",
    )
    .unwrap();
    let mut times: Vec<Duration> = (0..25)
        .map(|_| {
            let t = Instant::now();
            let r = run_session(&chain);
            let elapsed = t.elapsed();
            assert_eq!(r.entries.len(), 1);
            elapsed
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure!(
        median < Duration::from_millis(1),
        "median runtime {median:?}"
    );
    Ok(format!(
        "[{{a}},{{a,b,d,f,g,h,i,k,l}}] in {median:?} (median of 25)"
    ))
}

/// Element-wise reading of the relative maximalization, on plain name sets.
fn brute_oplus(
    sets: &[(BTreeSet<&'static str>, BTreeSet<&'static str>)],
) -> (BTreeSet<&'static str>, BTreeSet<&'static str>) {
    let adm: BTreeSet<_> = sets
        .iter()
        .map(|s| s.1.clone())
        .reduce(|a, b| a.intersection(&b).copied().collect())
        .unwrap();
    let nec: BTreeSet<_> = sets
        .iter()
        .flat_map(|s| s.0.iter().copied())
        .filter(|x| adm.contains(x))
        .collect();
    (nec, adm)
}

fn show(s: &(BTreeSet<&str>, BTreeSet<&str>)) -> String {
    let j = |x: &BTreeSet<&str>| x.iter().copied().collect::<Vec<_>>().join(",");
    format!("[{{{}}},{{{}}}]", j(&s.0), j(&s.1))
}

fn criterion_2() -> Outcome {
    let set = |xs: &[&'static str]| xs.iter().copied().collect::<BTreeSet<_>>();
    let a = (set(&["a", "d"]), set(&["a", "d", "f", "g", "h"]));
    let b = (set(&["a", "b", "d"]), set(&["a", "b", "d", "f", "i", "l"]));
    let c = (set(&["a", "h"]), set(&["a", "d", "h", "k"]));
    let ab = brute_oplus(&[a, b]);
    let abc = brute_oplus(&[ab.clone(), c]);
    ensure!(show(&ab) == "[{a,d},{a,d,f}]", "brute A⊕B = {}", show(&ab));
    ensure!(
        show(&abc) == "[{a,d},{a,d}]",
        "brute chain = {}",
        show(&abc)
    );
    let s2 = bound(TRIP, 1);
    let s_ab = bound(TRIP, 2);
    ensure!(s2 == show(&abc), "session {s2} vs brute {}", show(&abc));
    ensure!(s_ab == "[{a,d},{a,d,f}]", "session A⊕B = {s_ab}");
    let fixture = verify_fixture("trip-oplus-chain").map_err(|e| e.to_string())?;
    ensure!(fixture.passed(), "fixture failed: {:?}", fixture.checks);
    let note = fixture.notes.first().ok_or("no divergence note")?;
    ensure!(
        note.contains("[{a},{a,d}]"),
        "note does not cite the printed value: {note}"
    );
    Ok(format!("{s2}, A⊕B = {s_ab}, note: {note}"))
}

fn criterion_3() -> Outcome {
    let x = Universe::new("a b c d e f g".split(' ')).unwrap();
    let a = ns(&x, "a b", "a b c d");
    let b = ns(&x, "c d", "c d g");
    let lhs = a.complement().oplus(&b.complement()).unwrap();
    let rhs = a.odot(&b).unwrap().complement();
    ensure!(lhs.to_string() == "[{e,f,g},{e,f,g}]", "-A⊕-B = {lhs}");
    ensure!(
        rhs.to_string() == "[{e,f},{a,b,c,d,e,f,g}]",
        "-(A⊙B) = {rhs}"
    );
    let sub1 = lhs.included(&rhs, InclusionMode::NecessityOnly).unwrap();
    let sub2 = rhs
        .included(&lhs, InclusionMode::AdmissibilityOnly)
        .unwrap();
    ensure!(!sub1, "-A⊕-B ⊆¹ -(A⊙B) unexpectedly holds");
    ensure!(!sub2, "-(A⊙B) ⊆² -A⊕-B unexpectedly holds");
    let fixture = verify_fixture("demorgan-counterexample").map_err(|e| e.to_string())?;
    ensure!(fixture.passed(), "fixture failed");
    Ok(format!("-A⊕-B = {lhs} ⊈¹ -(A⊙B) = {rhs}; -(A⊙B) ⊈² -A⊕-B"))
}

fn criterion_4() -> Outcome {
    let config = SweepConfig::default();
    let started = Instant::now();
    let mut tuples = 0u64;
    let mut laws = 0;
    for law in LawId::ALL {
        if law.expectation() != Expectation::Holds {
            continue;
        }
        laws += 1;
        for n in 1..=law.default_size() {
            let r = check_law(law, n, None, &config).map_err(|e| e.to_string())?;
            ensure!(
                r.counterexamples_found == 0,
                "{} n={n}: {} violations, first {}",
                law.as_str(),
                r.counterexamples_found,
                r.counterexamples[0]
            );
            tuples += r.tuples_checked;
        }
    }
    let elapsed = started.elapsed();
    let r = check_law(LawId::CommutativityOdot, 5, None, &config).unwrap();
    ensure!(
        r.tuples_checked == 243 * 243,
        "commutativity n=5 checked {}",
        r.tuples_checked
    );
    let r = check_law(LawId::AssociativityOplus, 4, None, &config).unwrap();
    ensure!(
        r.tuples_checked == 81u64.pow(3),
        "associativity n=4 checked {}",
        r.tuples_checked
    );
    ensure!(elapsed < Duration::from_secs(60), "sweep took {elapsed:?}");
    Ok(format!(
        "{laws} laws, {tuples} tuples, zero violations, {elapsed:.2?}"
    ))
}

fn criterion_5() -> Outcome {
    let config = SweepConfig::default();
    let r = check_law(LawId::AbsorptionOdotOplus, 2, None, &config).unwrap();
    ensure!(
        r.counterexamples_found > 0,
        "absorption-odot-oplus: none at n=2"
    );
    for w in &r.counterexamples {
        ensure!(
            LawId::AbsorptionOdotOplus.violated_by(w).unwrap(),
            "{w} does not re-verify"
        );
    }
    let u = Universe::new(["x", "b"]).unwrap();
    let w = Witness::Sets(vec![ns(&u, "x", "x"), ns(&u, "b", "b")]);
    ensure!(
        LawId::AbsorptionOdotOplus.violated_by(&w).unwrap(),
        "absorption witness holds"
    );

    let mut first = Vec::new();
    for law in [
        LawId::DistributivityOplusOverOdot,
        LawId::DistributivityOdotOverOplus,
    ] {
        let n = (1..=4)
            .find(|&n| {
                check_law(law, n, None, &config)
                    .unwrap()
                    .counterexamples_found
                    > 0
            })
            .ok_or_else(|| format!("{}: no counterexample at n ≤ 4", law.as_str()))?;
        first.push(format!("{} at n={n}", law.as_str()));
    }
    let u5 = Universe::new("a b c d x".split(' ')).unwrap();
    let w5 = Witness::Sets(vec![
        ns(&u5, "x", "a x"),
        ns(&u5, "b", "b d"),
        ns(&u5, "c", "c x"),
    ]);
    ensure!(
        LawId::DistributivityOplusOverOdot.violated_by(&w5).unwrap(),
        "5-element witness holds"
    );
    let u4 = Universe::new("a x b c".split(' ')).unwrap();
    let w4 = Witness::Sets(vec![
        ns(&u4, "a", "a"),
        ns(&u4, "x", "x b"),
        ns(&u4, "x a", "x a c"),
    ]);
    ensure!(
        LawId::DistributivityOdotOverOplus.violated_by(&w4).unwrap(),
        "4-element witness holds"
    );
    Ok(format!(
        "absorption-odot-oplus: {} at n=2; {}; all witnesses verify",
        r.counterexamples_found,
        first.join(", ")
    ))
}

fn criterion_6() -> Outcome {
    let u = negset_core::oracle::synthetic_universe(3).unwrap();
    let specs = all_contradiction_specs(&u).unwrap();
    ensure!(specs.len() == 27, "{} labelings", specs.len());
    let config = SweepConfig::default();
    let mut pairs = 0;
    for law in [LawId::DiscClosureOplus, LawId::DiscOdotWeakPartial] {
        let r = check_law(law, 3, None, &config).unwrap();
        ensure!(
            r.counterexamples_found == 0,
            "{}: {}",
            law.as_str(),
            r.counterexamples[0]
        );
        pairs = r.tuples_checked;
    }
    let x = Universe::new(["a", "b"]).unwrap();
    let spec = ContradictionSpec::new(&x, &[("a", "b")], &[], None).unwrap();
    let ab = ns(&x, "a", "a").odot(&ns(&x, "b", "b")).unwrap();
    ensure!(ab.to_string() == "[{},{a,b}]", "A⊙B = {ab}");
    ensure!(!spec.is_disc(&ab).unwrap(), "A⊙B is DISC");
    ensure!(
        verify_fixture("disc-failure").unwrap().passed(),
        "fixture failed"
    );
    Ok(format!(
        "27 labelings, {pairs} DISC pairs per law; A⊙B = {ab} ∉ DISC"
    ))
}

fn random_negset(rng: &mut impl Rng, u: &Universe) -> NegotiationSet {
    let mut nec = Vec::new();
    let mut adm = Vec::new();
    for id in u.objects() {
        match rng.gen_range(0..3) {
            2 => {
                nec.push(id);
                adm.push(id);
            }
            1 => adm.push(id),
            _ => {}
        }
    }
    NegotiationSet::new(FiniteSet::from_ids(u, nec), FiniteSet::from_ids(u, adm)).unwrap()
}

fn criterion_7() -> Outcome {
    let x = Universe::new(["a", "b"]).unwrap();
    let (a, b) = (ns(&x, "a", "a"), ns(&x, "b", "b"));
    let spec = ContradictionSpec::new(&x, &[("a", "b")], &[], Some(&[("a", "b")])).unwrap();
    let strict = resolve_odot(&a, &b, &spec, &ResolutionPolicy::Strict, None).unwrap();
    ensure!(!strict.is_resolved(), "strict resolved");
    let dom = resolve_odot(&a, &b, &spec, &ResolutionPolicy::ObjectDominance, None).unwrap();
    let ResolutionOutcome::Resolved { result, .. } = dom else {
        return Err("dominance failed".into());
    };
    ensure!(result.to_string() == "[{},{a}]", "dominance gave {result}");
    ensure!(spec.is_disc(&result).unwrap(), "dominance result not DISC");
    let fewest = resolve_odot(&a, &b, &spec, &ResolutionPolicy::FewestNecessities, None).unwrap();
    ensure!(
        matches!(
            fewest,
            ResolutionOutcome::Failed(ref f) if matches!(f.reason, FailureReason::Incomparable { .. })
        ),
        "fewest-necessities gave {fewest:?}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 10_000;
    let mut resolved = 0;
    for case in 0..cases {
        let n = rng.gen_range(2..=6);
        let u = negset_core::oracle::synthetic_universe(n).unwrap();
        let mut strong = Vec::new();
        let mut weak = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                match rng.gen_range(0..4) {
                    0 => strong.push((ObjectId(i), ObjectId(j))),
                    1 => weak.push((ObjectId(i), ObjectId(j))),
                    _ => {}
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let dom = (0..n).flat_map(|i| {
            let order = order.clone();
            (i + 1..n).map(move |j| (ObjectId(order[i]), ObjectId(order[j])))
        });
        let spec = ContradictionSpec::from_ids(&u, strong, weak, Some(dom)).unwrap();
        let pick = |rng: &mut ChaCha8Rng| loop {
            let s = random_negset(rng, &u);
            if spec.is_disc(&s).unwrap() {
                break s;
            }
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let ranking = if case % 2 == 0 {
            ["A", "B"]
        } else {
            ["B", "A"]
        };
        for policy in [
            ResolutionPolicy::Strict,
            ResolutionPolicy::ObjectDominance,
            ResolutionPolicy::AgentPriority(negset_core::Ranking::new(ranking).unwrap()),
            ResolutionPolicy::FewestNecessities,
        ] {
            let out = resolve_odot(&a, &b, &spec, &policy, Some(("A", "B"))).unwrap();
            if let ResolutionOutcome::Resolved { result, .. } = out {
                let raw = a.odot(&b).unwrap();
                ensure!(
                    result.necessity() == raw.necessity(),
                    "necessity changed: {a} {b} {policy}"
                );
                ensure!(spec.is_disc(&result).unwrap(), "not DISC: {a} {b} {policy}");
                resolved += 1;
            }
        }
    }
    Ok(format!(
        "strict fails, dominance gives {result}, fewest incomparable; {cases} random cases, {resolved} resolved outcomes sound"
    ))
}

fn scripts() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/scripts");
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ns"))
        .collect();
    paths.sort();
    paths
}

fn criterion_8() -> Outcome {
    let paths = scripts();
    ensure!(paths.len() >= 20, "corpus has {} scripts", paths.len());
    for required in [
        "trip.ns",
        "trip_mixed.ns",
        "demorgan.ns",
        "absorption.ns",
        "distributivity_oplus_odot.ns",
        "distributivity_odot_oplus.ns",
        "disc_failure_strict.ns",
    ] {
        ensure!(
            paths.iter().any(|p| p.ends_with(required)),
            "corpus lacks {required}"
        );
    }
    for path in &paths {
        let text = fs::read_to_string(path).unwrap();
        let first = parse_session(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let second = parse_session(&first.to_string()).map_err(|e| e.to_string())?;
        ensure!(first == second, "{} does not round-trip", path.display());
    }
    let malformed = [
        ("universe a\nagent A = [{a} {}]", 2, 11),
        ("agent A = [{} {}]\nuniverse a", 1, 1),
        ("universe a\nagent A = [{a} {a}\n", 2, 19),
        ("universe a\nagent A = [{a} {a}]\neval A odot", 3, 12),
        ("universe a\neval B", 2, 6),
    ];
    for (text, line, column) in malformed {
        let err = parse_session(text)
            .err()
            .ok_or(format!("{text:?} parsed"))?;
        ensure!(
            (err.line, err.column) == (line, column),
            "{text:?}: got {}:{}",
            err.line,
            err.column
        );
    }
    let mut runs = 0;
    for path in &paths {
        let text = fs::read_to_string(path).unwrap();
        let expected: i32 = text
            .lines()
            .find_map(|l| l.strip_prefix("# exit: "))
            .ok_or(format!("{} has no exit header", path.display()))?
            .parse()
            .unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_negset"))
            .arg("eval")
            .arg(path)
            .output()
            .unwrap()
            .status
            .code();
        ensure!(
            status == Some(expected),
            "{}: exit {status:?}, expected {expected}",
            path.display()
        );
        runs += 1;
    }
    Ok(format!(
        "{} scripts round-trip, {} malformed inputs located, {runs} exit codes match",
        paths.len(),
        malformed.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("trip odot chain", criterion_1),
        ("trip oplus chain", criterion_2),
        ("weak De Morgan counterexample", criterion_3),
        ("proved laws sweep", criterion_4),
        ("refuted laws", criterion_5),
        ("DISC sweeps", criterion_6),
        ("resolution policies", criterion_7),
        ("parser and exit codes", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
