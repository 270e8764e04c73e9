//! Verification reports and datum enumeration for sweeps.

use std::fmt;
use std::sync::Arc;

use crate::builder::{build, predicted_dims, reduce_with_trace, CaseLabel, Method};
use crate::error::Result;
use crate::grading::WeightSpec;
use crate::quiver::{are_isomorphic, coefficient_set, is_exceptional, CanonicalQuiver, Representation};
use crate::sheaf::CokernelDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<12} {:<4} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

/// What a representation is expected to look like.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub dims: Option<Vec<usize>>,
    pub rank: Option<i64>,
}

impl Expected {
    /// Expectations for the cokernel of a datum over `I` with the given powers.
    pub fn for_datum(quiver: &CanonicalQuiver, c: &CokernelDatum) -> Self {
        Expected { dims: Some(predicted_dims(quiver, c.y(), &c.arms(), &c.powers())), rank: Some(2) }
    }
}

/// Relations, rank, dimension vector, exceptionality and entry audit.
pub fn verify_representation(rep: &Representation, expected: &Expected) -> Report {
    let mut report = Report::default();
    match rep.validate() {
        Ok(()) => report.push("relations", true, "all canonical relations hold"),
        Err(e) => report.push("relations", false, e.to_string()),
    }
    let rank = rep.rank();
    match expected.rank {
        Some(r) => report.push("rank", rank == r, format!("rank {rank}, expected {r}")),
        None => report.push("rank", true, format!("rank {rank}")),
    }
    if let Some(dims) = &expected.dims {
        let ok = dims.as_slice() == rep.dim_vector();
        let detail =
            if ok { format!("{:?}", rep.dim_vector()) } else { format!("{:?}, expected {:?}", rep.dim_vector(), dims) };
        report.push("dimensions", ok, detail);
    }
    let exceptional = is_exceptional(rep);
    report.push(
        "exceptional",
        exceptional,
        if exceptional { "End = k, Ext¹ = 0, Euler form 1" } else { "not exceptional" },
    );
    let allowed = coefficient_set(rep.spec());
    let outside = rep.entries_outside(&allowed);
    let detail = if outside.is_empty() {
        "entries in {0, ±1, ±λ}".to_string()
    } else {
        let list: Vec<String> = outside.iter().map(|(a, v)| format!("{v} at {a}")).collect();
        format!("foreign entries: {}", list.join(", "))
    };
    report.push("entries", outside.is_empty(), detail);
    report
}

/// Everything a sweep records about one datum.
#[derive(Clone, Debug)]
pub struct DatumOutcome {
    pub label: CaseLabel,
    pub trace: Vec<CaseLabel>,
    pub closed: Representation,
    pub report: Report,
}

/// Builds `c` by both methods, verifies the closed form and checks that the
/// methods agree up to isomorphism.
pub fn check_datum(quiver: &Arc<CanonicalQuiver>, c: &CokernelDatum) -> Result<DatumOutcome> {
    let (_, trace) = reduce_with_trace(c)?;
    let closed = build(quiver, c, Method::Closed)?;
    let cokernel = build(quiver, c, Method::Cokernel)?;
    let mut report = verify_representation(&closed, &Expected::for_datum(quiver, c));
    let agree = are_isomorphic(&closed, &cokernel)?;
    report.push("agreement", agree, if agree { "methods agree" } else { "closed and cokernel builds differ" });
    Ok(DatumOutcome { label: trace[0], trace, closed, report })
}

/// All cokernel data with effective `y` of vc-coefficient at most `max_c`,
/// optionally restricted to one index set. Ordered by `y`, then `I`, then `b`.
pub fn enumerate_data(spec: &WeightSpec, max_c: i64, arms: Option<[usize; 3]>) -> Vec<CokernelDatum> {
    let t = spec.t();
    let index_sets: Vec<[usize; 3]> = match arms {
        Some(a) => vec![a],
        None => {
            let mut v = Vec::new();
            for i in 1..=t {
                for j in i + 1..=t {
                    for k in j + 1..=t {
                        v.push([i, j, k]);
                    }
                }
            }
            v
        }
    };
    let mut out = Vec::new();
    for n in 0..=max_c {
        let mut e = vec![0i64; t];
        loop {
            let y = spec.element(n, &e).expect("length t");
            for &set in &index_sets {
                let bounds = set.map(|i| spec.weight(i) - 1);
                let mut b = [1i64; 3];
                loop {
                    if let Ok(c) = CokernelDatum::new(y.clone(), set, b) {
                        out.push(c);
                    }
                    let mut k = 2;
                    loop {
                        b[k] += 1;
                        if b[k] <= bounds[k] {
                            break;
                        }
                        b[k] = 1;
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                    }
                    if b == [1, 1, 1] {
                        break;
                    }
                }
            }
            let mut k = t;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                e[k] += 1;
                if e[k] < spec.weight(k + 1) {
                    break;
                }
                e[k] = 0;
            }
            if e.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let spec = WeightSpec::with_weights(&[2, 3, 7]).unwrap();
        // 42 normal-form coefficient tuples per vc-coefficient, 1·2·6 powers.
        assert_eq!(enumerate_data(&spec, 0, None).len(), 42 * 12);
        assert_eq!(enumerate_data(&spec, 1, None).len(), 2 * 42 * 12);
        assert!(enumerate_data(&spec, -1, None).is_empty());
        let spec = WeightSpec::with_weights(&[2, 2, 2, 3]).unwrap();
        assert_eq!(enumerate_data(&spec, 0, Some([1, 2, 3])).len(), 24);
    }

    #[test]
    fn report_for_basic_datum() {
        let spec = WeightSpec::with_weights(&[2, 3, 7]).unwrap();
        let q = Arc::new(CanonicalQuiver::new(&spec));
        let c = CokernelDatum::new(spec.zero(), [1, 2, 3], [1, 1, 1]).unwrap();
        let out = check_datum(&q, &c).unwrap();
        assert!(out.report.passed(), "{}", out.report);
        assert_eq!(out.label, CaseLabel::A);
    }
}
