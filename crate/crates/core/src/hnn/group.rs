use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{
    hermite_normal_form, IntMatrix, LatticeVector, Monomorphism, ResidueConvention,
};
use crate::error::{Error, Result};

/// Outcome of checking the three hypotheses on a pair of monomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// `λ ∘ μ = μ ∘ λ`
    pub commute: bool,
    /// `λ(A) ∪ μ(A)` generates `A`
    pub generate: bool,
    /// `λ(A) ∪ μ(A) ≠ A`
    pub proper_union: bool,
    pub diagnostics: Vec<String>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.commute && self.generate && self.proper_union
    }

    pub fn flags(&self) -> [bool; 3] {
        [self.commute, self.generate, self.proper_union]
    }

    /// `pass pass fail` style summary.
    pub fn summary(&self) -> String {
        self.flags()
            .iter()
            .map(|&b| if b { "pass" } else { "fail" })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Checks commutation, joint generation and the proper-union condition.
///
/// The proper-union test uses `|det λ| > 1 ∧ |det μ| > 1`: a group is never
/// the union of two proper subgroups, so the union is all of `Z^d` exactly
/// when one of the images already is.
pub fn validate_conditions(lambda: &Monomorphism, mu: &Monomorphism) -> Result<ConditionReport> {
    if lambda.rank() != mu.rank() {
        return Err(Error::RankMismatch {
            left: lambda.rank(),
            right: mu.rank(),
        });
    }
    let d = lambda.rank();
    let mut diagnostics = Vec::new();

    let lm = lambda.matrix().mul(mu.matrix());
    let ml = mu.matrix().mul(lambda.matrix());
    let commute = lm == ml;
    if !commute {
        diagnostics.push(format!("λμ = {lm} differs from μλ = {ml}"));
    }

    let joint = hermite_normal_form(&lambda.matrix().hcat(mu.matrix()));
    let block = joint.pivot_block();
    let generate = joint.rank() == d && block.is_identity();
    if !generate {
        diagnostics.push(format!(
            "λ(A) + μ(A) has Hermite basis {block}, not the identity"
        ));
    }

    let one = BigInt::one();
    let proper_union = lambda.determinant().abs() > one && mu.determinant().abs() > one;
    if !proper_union {
        diagnostics.push(format!(
            "det λ = {}, det μ = {}: one image is all of Z^{d}",
            lambda.determinant(),
            mu.determinant()
        ));
    }

    Ok(ConditionReport {
        commute,
        generate,
        proper_union,
        diagnostics,
    })
}

/// The HNN extension `G = ⟨Z^d, t : t⁻¹λ(a)t = μ(a)⟩`, marked by
/// `{t, a_1, …, a_d}` in that order.
#[derive(Clone, Debug)]
pub struct HnnGroup {
    pub(crate) lambda: Monomorphism,
    pub(crate) mu: Monomorphism,
    pub(crate) report: ConditionReport,
    pub(crate) names: Vec<String>,
    /// Transform solving `[λ | μ]·z = v` (first `d` columns) and its kernel
    /// (last `d` columns).
    pub(crate) joint_transform: IntMatrix,
    /// `x`-block of the kernel of `[λ | μ]`.
    pub(crate) kernel_x: Monomorphism,
}

impl HnnGroup {
    pub fn new(lambda: Monomorphism, mu: Monomorphism) -> Result<Self> {
        let report = validate_conditions(&lambda, &mu)?;
        if !report.all_hold() {
            return Err(Error::ConditionsFailed(format!(
                "{} ({})",
                report.summary(),
                report.diagnostics.join("; ")
            )));
        }
        let d = lambda.rank();
        let joint = hermite_normal_form(&lambda.matrix().hcat(mu.matrix()));
        let joint_transform = joint.u;
        let mut kx = IntMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                kx.set(r, c, joint_transform.get(r, d + c).clone());
            }
        }
        let kernel_x = Monomorphism::new(kx)?;
        let names = if d == 1 {
            vec!["t".to_string(), "a".to_string()]
        } else {
            std::iter::once("t".to_string())
                .chain((1..=d).map(|j| format!("a{j}")))
                .collect()
        };
        Ok(HnnGroup {
            lambda,
            mu,
            report,
            names,
            joint_transform,
            kernel_x,
        })
    }

    /// `BS(m, n) = ⟨a, t : t⁻¹aᵐt = aⁿ⟩`.
    pub fn baumslag_solitar(m: i64, n: i64) -> Result<Self> {
        HnnGroup::new(Monomorphism::scalar(m)?, Monomorphism::scalar(n)?)
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn lambda(&self) -> &Monomorphism {
        &self.lambda
    }

    pub fn mu(&self) -> &Monomorphism {
        &self.mu
    }

    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Solves `λ·x + μ·y = v`, choosing `x` centered modulo the kernel.
    pub(crate) fn split_joint(&self, v: &LatticeVector) -> (LatticeVector, LatticeVector) {
        let d = self.rank();
        let u = &self.joint_transform;
        let z0: Vec<BigInt> = (0..2 * d)
            .map(|r| {
                (0..d).fold(BigInt::from(0), |acc, c| acc + u.get(r, c) * &v.0[c])
            })
            .collect();
        let x0 = LatticeVector(z0[..d].to_vec());
        let (x, w) = self.kernel_x.residue_with(&x0, ResidueConvention::Centered);
        let y = LatticeVector(
            (0..d)
                .map(|r| {
                    let shift = (0..d).fold(BigInt::from(0), |acc, c| {
                        acc + u.get(d + r, d + c) * &w.0[c]
                    });
                    &z0[d + r] - shift
                })
                .collect(),
        );
        (x, y)
    }
}
