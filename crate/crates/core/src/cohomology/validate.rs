use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::model::{GradedVector, VarietyModel};
use crate::linalg::{format_rational, Rational};

/// One failed invariant with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks_run: Vec<String>,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    fn run(&mut self, name: &str, failures: Vec<String>) {
        self.checks_run.push(name.to_string());
        self.failures
            .extend(failures.into_iter().map(|w| ValidationFailure { check: name.to_string(), witness: w }));
    }

    pub fn failed(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn graded_sign(k: usize, l: usize) -> Rational {
    if (k * l).is_multiple_of(2) {
        Rational::from_integer(1.into())
    } else {
        Rational::from_integer((-1).into())
    }
}

/// Exact check of every model invariant. Failures are collected, not raised.
pub fn validate_model(m: &VarietyModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = m.n();
    let top = m.top();
    let dims = m.dims();

    let mut dim_failures = Vec::new();
    if dims[0] != 1 {
        dim_failures.push(format!("d_0 = {}", dims[0]));
    }
    if dims[top] != 1 {
        dim_failures.push(format!("d_{top} = {}", dims[top]));
    }
    for k in 0..=top {
        if dims[k] != dims[top - k] {
            dim_failures.push(format!("d_{k} = {} but d_{} = {}", dims[k], top - k, dims[top - k]));
        }
    }
    report.run("poincare-dimensions", dim_failures);
    if dims[0] != 1 {
        // Nothing below is meaningful without a one-dimensional H^0.
        report.valid = report.failures.is_empty();
        return report;
    }

    let mut unit_failures = Vec::new();
    let unit = m.unit();
    for k in 0..=top {
        for i in 0..dims[k] {
            let v = GradedVector::basis(k, dims[k], i);
            let left = m.cup_coords(0, &unit.coords, k, &v.coords);
            let right = m.cup_coords(k, &v.coords, 0, &unit.coords);
            if left != v.coords || right != v.coords {
                unit_failures.push(format!("1 ∪ v fails to equal v for basis vector {i} of H^{k}"));
            }
        }
    }
    report.run("unit", unit_failures);

    let mut pairing_failures = Vec::new();
    for k in 0..=top {
        let p = m.pairing_matrix(k);
        if !p.is_square() || p.rank() < p.rows() {
            // a left-kernel vector witnesses the degeneracy
            let witness = p.transpose().kernel().into_iter().next();
            let support: Vec<usize> = witness
                .as_ref()
                .map(|w| (0..w.len()).filter(|&i| !w[i].is_zero()).collect())
                .unwrap_or_default();
            pairing_failures.push(format!(
                "pairing H^{k} x H^{} is degenerate; kernel vector {} supported on basis indices {:?}",
                top - k,
                witness.as_deref().map(fmt_vec).unwrap_or_default(),
                support
            ));
        }
    }
    report.run("pairing-nondegenerate", pairing_failures);

    let mut comm_failures = Vec::new();
    for k in 0..=top {
        for l in 0..=top - k {
            for i in 0..dims[k] {
                for j in 0..dims[l] {
                    let ab = m.cup_basis(k, l, i, j);
                    let ba = m.cup_basis(l, k, j, i);
                    let s = graded_sign(k, l);
                    if ab.iter().zip(ba).any(|(x, y)| *x != &s * y) {
                        comm_failures.push(format!(
                            "v{i} ∈ H^{k}, v{j} ∈ H^{l}: a∪b = {} but (-1)^kl b∪a = {}",
                            fmt_vec(ab),
                            fmt_vec(&ba.iter().map(|y| &s * y).collect::<Vec<_>>())
                        ));
                    }
                }
            }
        }
    }
    report.run("graded-commutative", comm_failures);

    let mut assoc_failures = Vec::new();
    'assoc: for k in 0..=top {
        for l in 0..=top - k {
            for p in 0..=top - k - l {
                for i in 0..dims[k] {
                    for j in 0..dims[l] {
                        let ab = m.cup_basis(k, l, i, j);
                        for c in 0..dims[p] {
                            let e = GradedVector::basis(p, dims[p], c);
                            let left = m.cup_coords(k + l, ab, p, &e.coords);
                            let bc = m.cup_basis(l, p, j, c);
                            let a = GradedVector::basis(k, dims[k], i);
                            let right = m.cup_coords(k, &a.coords, l + p, bc);
                            if left != right {
                                assoc_failures.push(format!(
                                    "(v{i}∪v{j})∪v{c} = {} but v{i}∪(v{j}∪v{c}) = {} in degrees ({k}, {l}, {p})",
                                    fmt_vec(&left),
                                    fmt_vec(&right)
                                ));
                                if assoc_failures.len() >= 8 {
                                    break 'assoc;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.run("associative", assoc_failures);

    let mut ample_failures = Vec::new();
    match m.ample_power(n) {
        Ok(hn) => {
            let v = m.integrate(&hn);
            if !v.is_positive() {
                ample_failures.push(format!("∫ h^{n} = {}", format_rational(&v)));
            }
        }
        Err(e) => ample_failures.push(e.to_string()),
    }
    report.run("ample-positive", ample_failures);

    let mut alg_failures = Vec::new();
    for j in 0..=n {
        let a = m.algebraic(j);
        let distinct: BTreeSet<usize> = a.iter().copied().collect();
        if distinct.len() != a.len() || a.iter().any(|&i| i >= dims[2 * j]) {
            alg_failures.push(format!("A^{j} indices {a:?} are not distinct basis indices of H^{}", 2 * j));
        }
    }
    if alg_failures.is_empty() {
        if m.algebraic(0).len() != dims[0] {
            alg_failures.push("A^0 is not all of H^0".into());
        }
        if m.algebraic(n).len() != dims[top] {
            alg_failures.push(format!("A^{n} is not all of H^{top}"));
        }
        for j in 0..=n {
            let p = m.algebraic_pairing(j);
            if !p.is_square() || p.rank() < p.rows() {
                alg_failures.push(format!(
                    "pairing A^{j} x A^{} is degenerate ({}x{} of rank {})",
                    n - j,
                    p.rows(),
                    p.cols(),
                    p.rank()
                ));
            }
        }
    }
    report.run("algebraic-subspaces", alg_failures);

    report.valid = report.failures.is_empty();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::model::{CupEntry, ModelParts};
    use crate::linalg::rat;

    fn p1(top_integral: i64) -> ModelParts {
        let e = |t: i64| vec![rat(t, 1)];
        ModelParts {
            n: 1,
            dims: vec![1, 0, 1],
            labels: vec![vec!["1".into()], vec![], vec!["h".into()]],
            cup: vec![
                CupEntry { k: 0, l: 0, i: 0, j: 0, target: e(1) },
                CupEntry { k: 0, l: 2, i: 0, j: 0, target: e(1) },
                CupEntry { k: 2, l: 0, i: 0, j: 0, target: e(1) },
            ],
            integrate: e(top_integral),
            ample: e(1),
            algebraic: vec![vec![0], vec![0]],
            q: None,
        }
    }

    #[test]
    fn projective_line_is_valid() {
        let r = validate_model(&VarietyModel::from_parts(p1(1)).unwrap());
        assert!(r.valid, "{:?}", r.failures);
    }

    #[test]
    fn zero_integral_is_caught_with_witness() {
        let r = validate_model(&VarietyModel::from_parts(p1(0)).unwrap());
        assert!(!r.valid);
        assert!(r.failed("pairing-nondegenerate"));
        assert!(r.failed("ample-positive"));
        let w = &r.failures.iter().find(|f| f.check == "pairing-nondegenerate").unwrap().witness;
        assert!(w.contains("basis indices [0]"), "{w}");
    }

    #[test]
    fn broken_commutativity_is_reported() {
        let mut parts = p1(1);
        parts.cup[2].target = vec![rat(2, 1)];
        let r = validate_model(&VarietyModel::from_parts(parts).unwrap());
        assert!(r.failed("graded-commutative"));
        assert!(r.failed("unit"));
    }
}
