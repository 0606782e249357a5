//! Built-in worked examples, recomputed from raw inputs on every run.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::laws::{LawId, Witness};
use crate::consistency::{resolve_odot, ContradictionSpec, ResolutionPolicy};
use crate::error::{Error, Result};
use crate::negset::{InclusionMode, NegotiationSet};
use crate::universe::Universe;

pub const FIXTURE_IDS: [&str; 8] = [
    "demorgan-counterexample",
    "trip-odot-chain",
    "trip-oplus-chain",
    "trip-mixed-chain",
    "absorption-counterexample",
    "distributivity-oplus-odot-counterexample",
    "distributivity-odot-oplus-counterexample",
    "disc-failure",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub label: String,
    pub expected: String,
    pub computed: String,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub id: &'static str,
    pub checks: Vec<FixtureCheck>,
    pub notes: Vec<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FixtureCheck::passed)
    }

    fn value(&mut self, label: &str, computed: &NegotiationSet, expected: &str) {
        self.checks.push(FixtureCheck {
            label: label.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }

    fn flag(&mut self, label: &str, computed: bool, expected: bool) {
        self.checks.push(FixtureCheck {
            label: label.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }
}

fn universe(names: &str) -> Result<Universe> {
    Universe::new(names.split_whitespace())
}

fn ns(u: &Universe, n: &str, p: &str) -> Result<NegotiationSet> {
    NegotiationSet::from_names(u, n.split_whitespace(), p.split_whitespace())
}

fn trip() -> Result<[NegotiationSet; 3]> {
    let x = universe("a b c d e f g h i k l")?;
    Ok([
        ns(&x, "a d", "a d f g h")?,
        ns(&x, "a b d", "a b d f i l")?,
        ns(&x, "a h", "a d h k")?,
    ])
}

pub fn verify_fixture(id: &str) -> Result<FixtureReport> {
    let id = FIXTURE_IDS
        .iter()
        .copied()
        .find(|f| *f == id)
        .ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
    let mut r = FixtureReport {
        id,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    match id {
        "demorgan-counterexample" => {
            let x = universe("a b c d e f g")?;
            let a = ns(&x, "a b", "a b c d")?;
            let b = ns(&x, "c d", "c d g")?;
            let ab = a.odot(&b)?;
            let neg_ab = ab.complement();
            let (neg_a, neg_b) = (a.complement(), b.complement());
            let lhs = neg_a.oplus(&neg_b)?;
            r.value("A ⊙ B", &ab, "[{},{a,b,c,d,g}]");
            r.value("-(A ⊙ B)", &neg_ab, "[{e,f},{a,b,c,d,e,f,g}]");
            r.value("-A", &neg_a, "[{e,f,g},{c,d,e,f,g}]");
            r.value("-B", &neg_b, "[{a,b,e,f},{a,b,e,f,g}]");
            r.value("-A ⊕ -B", &lhs, "[{e,f,g},{e,f,g}]");
            r.flag(
                "-A ⊕ -B ⊆¹ -(A ⊙ B)",
                lhs.included(&neg_ab, InclusionMode::NecessityOnly)?,
                false,
            );
            r.flag(
                "-(A ⊙ B) ⊆² -A ⊕ -B",
                neg_ab.included(&lhs, InclusionMode::AdmissibilityOnly)?,
                false,
            );
        }
        "trip-odot-chain" => {
            let [a, b, c] = trip()?;
            let ab = a.odot(&b)?;
            r.value("A ⊙ B", &ab, "[{a,d},{a,b,d,f,g,h,i,l}]");
            r.value("(A ⊙ B) ⊙ C", &ab.odot(&c)?, "[{a},{a,b,d,f,g,h,i,k,l}]");
        }
        "trip-oplus-chain" => {
            let [a, b, c] = trip()?;
            let ab = a.oplus(&b)?;
            let abc = ab.oplus(&c)?;
            r.value("A ⊕ B", &ab, "[{a,d},{a,d,f}]");
            r.value("(A ⊕ B) ⊕ C", &abc, "[{a,d},{a,d}]");
            r.notes.push(
                "originally published value for (A ⊕ B) ⊕ C is [{a},{a,d}]; the operator \
                 definition keeps d necessary (d ∈ B¹ and d ∈ A² ∩ B² ∩ C²)"
                    .into(),
            );
        }
        "trip-mixed-chain" => {
            let [a, b, c] = trip()?;
            let bc = b.oplus(&c)?;
            r.value("B ⊕ C", &bc, "[{a,d},{a,d}]");
            r.value("(B ⊕ C) ⊙ A", &bc.odot(&a)?, "[{a,d},{a,d,f,g,h}]");
            r.notes.push(
                "originally published values are B ⊕ C = [{a},{a,d}] and (B ⊕ C) ⊙ A = \
                 [{a},{a,d,f,g,h}]; the operator definition keeps d necessary"
                    .into(),
            );
        }
        "absorption-counterexample" => {
            let x = universe("x b")?;
            let a = ns(&x, "x", "x")?;
            let b = ns(&x, "b", "b")?;
            let ab = a.oplus(&b)?;
            r.value("A ⊕ B", &ab, "[{},{}]");
            r.value("A ⊙ (A ⊕ B)", &a.odot(&ab)?, "[{},{x}]");
            let w = Witness::Sets(vec![a, b]);
            r.flag(
                "violates absorption-odot-oplus",
                LawId::AbsorptionOdotOplus.violated_by(&w)?,
                true,
            );
        }
        "distributivity-oplus-odot-counterexample" => {
            let x = universe("a b c d x")?;
            let a = ns(&x, "x", "a x")?;
            let b = ns(&x, "b", "b d")?;
            let c = ns(&x, "c", "c x")?;
            let bc = b.odot(&c)?;
            let (ab, ac) = (a.oplus(&b)?, a.oplus(&c)?);
            r.value("B ⊙ C", &bc, "[{},{b,c,d,x}]");
            r.value("A ⊕ (B ⊙ C)", &a.oplus(&bc)?, "[{x},{x}]");
            r.value("A ⊕ B", &ab, "[{},{}]");
            r.value("A ⊕ C", &ac, "[{x},{x}]");
            r.value("(A ⊕ B) ⊙ (A ⊕ C)", &ab.odot(&ac)?, "[{},{x}]");
            let w = Witness::Sets(vec![a, b, c]);
            r.flag(
                "violates distributivity-oplus-over-odot",
                LawId::DistributivityOplusOverOdot.violated_by(&w)?,
                true,
            );
        }
        "distributivity-odot-oplus-counterexample" => {
            let x = universe("a x b c")?;
            let a = ns(&x, "a", "a")?;
            let b = ns(&x, "x", "x b")?;
            let c = ns(&x, "x a", "x a c")?;
            let (ab, ac) = (a.odot(&b)?, a.odot(&c)?);
            let bc = b.oplus(&c)?;
            r.value("A ⊙ B", &ab, "[{},{a,x,b}]");
            r.value("A ⊙ C", &ac, "[{a},{a,x,c}]");
            r.value("(A ⊙ B) ⊕ (A ⊙ C)", &ab.oplus(&ac)?, "[{a},{a,x}]");
            r.value("B ⊕ C", &bc, "[{x},{x}]");
            r.value("A ⊙ (B ⊕ C)", &a.odot(&bc)?, "[{},{a,x}]");
            let w = Witness::Sets(vec![a, b, c]);
            r.flag(
                "violates distributivity-odot-over-oplus",
                LawId::DistributivityOdotOverOplus.violated_by(&w)?,
                true,
            );
        }
        "disc-failure" => {
            let x = universe("a b")?;
            let spec = ContradictionSpec::new(&x, &[("a", "b")], &[], None)?;
            let a = ns(&x, "a", "a")?;
            let b = ns(&x, "b", "b")?;
            let ab = a.odot(&b)?;
            r.flag("A ∈ DISC", spec.is_disc(&a)?, true);
            r.flag("B ∈ DISC", spec.is_disc(&b)?, true);
            r.value("A ⊙ B", &ab, "[{},{a,b}]");
            r.flag("A ⊙ B ∈ DISC", spec.is_disc(&ab)?, false);
            let violations: Vec<String> = spec
                .disc_violations(&ab)?
                .iter()
                .map(|v| v.describe(&x))
                .collect();
            r.checks.push(FixtureCheck {
                label: "violations of A ⊙ B".into(),
                expected: "strong(a,b)".into(),
                computed: violations.join(" "),
            });
            let strict = resolve_odot(&a, &b, &spec, &ResolutionPolicy::Strict, None)?;
            r.flag("strict policy resolves", strict.is_resolved(), false);
        }
        _ => unreachable!("catalog and dispatch disagree on {id}"),
    }
    if !r.passed() {
        r.notes.push(format!("fixture {id} failed"));
    }
    Ok(r)
}
