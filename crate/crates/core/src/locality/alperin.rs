//! Factorization of locality elements through normalizers of objects.

use serde::Serialize;

use super::Locality;
use crate::engine::local::p_part;
use crate::engine::{Elem, Subgroup};
use crate::error::{Error, Result};
use crate::fusion::describe;

/// `g = g₁⋯gₙ` with `gᵢ ∈ N_L(Rᵢ)`, `Rᵢ ∈ Δ` and `N_S(Rᵢ)` Sylow in `N_L(Rᵢ)`.
#[derive(Clone, Debug)]
pub struct AlperinFactorization {
    pub original: Elem,
    pub factors: Vec<(Elem, Subgroup)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorSummary {
    pub element: String,
    pub object: String,
}

impl AlperinFactorization {
    pub fn summary(&self, l: &Locality) -> Vec<FactorSummary> {
        let g = l.group();
        self.factors
            .iter()
            .map(|(x, r)| FactorSummary {
                element: g.label(*x),
                object: describe(g, r),
            })
            .collect()
    }

    /// Checks every defining property; the error names the first violation.
    pub fn validate(&self, l: &Locality) -> Result<()> {
        let g = l.group();
        let f = &l.fusion;
        let fail = |msg: String| {
            Err(Error::Internal(format!(
                "factorization of {}: {msg}",
                g.label(self.original)
            )))
        };
        let word: Vec<Elem> = self.factors.iter().map(|(x, _)| *x).collect();
        for (x, r) in &self.factors {
            if !l.objects.contains(r) {
                return fail(format!("{} is not an object", describe(g, r)));
            }
            if !g.normalizes(*x, r) || !l.contains(*x) {
                return fail(format!(
                    "{} does not normalize {}",
                    g.label(*x),
                    describe(g, r)
                ));
            }
            if f.n_s(r).order() != p_part(f.n_g(r).order(), f.p) {
                return fail(format!(
                    "N_S({}) is not Sylow in its normalizer",
                    describe(g, r)
                ));
            }
        }
        if !l.in_domain(&word) {
            return fail("word is not in D".into());
        }
        if g.product(&word) != self.original {
            return fail("product differs".into());
        }
        let mut image = l.s_f(self.original)?;
        for (x, r) in &self.factors {
            if !image.is_subgroup_of(r) {
                return fail(format!(
                    "{} is not inside {}",
                    describe(g, &image),
                    describe(g, r)
                ));
            }
            image = g.conj_subgroup(&image, *x);
        }
        Ok(())
    }
}

impl Locality<'_> {
    /// Writes `g` as a product through object normalizers. With `P = S_g`,
    /// `P^g = Q` and `P*` a fully normalized conjugate, `g = a·m·b⁻¹` where
    /// `a, b` carry `P, Q` onto `P*` with `N_S(P)^a, N_S(Q)^b ≤ S` and
    /// `m ∈ N_G(P*)`. Both `a` and `b⁻¹` have larger `S_f` than `g`.
    pub fn alperin_factorize(&self, g: Elem) -> Result<AlperinFactorization> {
        let p = self.s_f(g)?;
        let mut factors = Vec::new();
        self.factor_into(g, p, &mut factors);
        let out = AlperinFactorization {
            original: g,
            factors,
        };
        out.validate(self)?;
        Ok(out)
    }

    fn factor_into(&self, x: Elem, p: Subgroup, out: &mut Vec<(Elem, Subgroup)>) {
        let grp = self.group();
        let f = &self.fusion;
        if p == *self.sylow() {
            out.push((x, p));
            return;
        }
        let q = grp.conj_subgroup(&p, x);
        let star = if f.is_fully_normalized(&p) {
            p.clone()
        } else {
            grp.conj_subgroup(&p, f.fully_normalize(&p).witness)
        };
        let a = if star == p {
            0
        } else {
            f.fully_normalize_to(&p, &star)
                .expect("fully normalized target")
                .witness
        };
        let b = if star == q {
            0
        } else {
            f.fully_normalize_to(&q, &star)
                .expect("fully normalized target")
                .witness
        };
        let b_inv = grp.inv(b);
        let m = grp.product(&[grp.inv(a), x, b]);
        if a != 0 {
            let pa = self.s_f(a).expect("a is in L");
            self.factor_into(a, pa, out);
        }
        out.push((m, star));
        if b != 0 {
            let pb = self.s_f(b_inv).expect("b⁻¹ is in L");
            self.factor_into(b_inv, pb, out);
        }
    }
}
