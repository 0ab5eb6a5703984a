//! The wreath Schur algebra: homomorphisms `y_μ H → y_λ H` in the basis `θ_{A,P}`.

use serde_json::{json, Value};

use crate::basealg::{BaseElt, BaseMono};
use crate::error::{Error, Result};
use crate::lc::Lc;
use crate::qwp::{Algebra, QwpElt};
use crate::symgroup::{
    double_coset_min, factor_left, matrix_to_triple, triple_to_matrix, Composition, DoubleCoset, Matrix, Perm,
};

/// A homomorphism `y_source H → y_target H`, stored through the image of `y_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurElt {
    pub source: Composition,
    pub target: Composition,
    /// Image of `y_source`.
    pub value: QwpElt,
    /// `value = y_target · tail`.
    pub tail: QwpElt,
}

/// Pairs `(η, b_η)` with `Σ_η y_λ H_η b_η` the expanded element.
pub type PermModExpansion = Vec<(Perm, BaseElt)>;

/// One summand `y_λ H_g P y^δ_ν c` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    pub matrix: Matrix,
    pub p: BaseElt,
    pub c: BaseElt,
}

/// Whether `P` commutes with every `H_i`, `s_i ∈ Σ_δ`: `σ_i(P) = P` and `ρ_i(P) = 0`.
pub fn commutes_with_parabolic(alg: &Algebra, p: &BaseElt, delta: &Composition) -> bool {
    delta.generators().into_iter().all(|i| alg.base.sigma(i, p) == *p && alg.base.rho(i, p).is_zero())
}

/// `Σ_{w ∈ Σ_δ} σ_w(b)`.
pub fn symmetrize(alg: &Algebra, b: &BaseElt, delta: &Composition) -> BaseElt {
    let mut out = BaseElt::zero();
    for w in delta.subgroup() {
        out.add_assign(&alg.base.sigma_perm(&w, b));
    }
    out
}

/// `θ_{A,P}`: `y_μ ↦ y_λ H_g P y^δ_μ`.
pub fn theta_build(alg: &Algebra, a: &Matrix, p: &BaseElt) -> Result<SchurElt> {
    let dc = matrix_to_triple(a)?;
    if dc.lambda.size() != alg.d() {
        return Err(Error::Malformed(format!("matrix total {} differs from rank {}", dc.lambda.size(), alg.d())));
    }
    alg.base.check(p)?;
    if !commutes_with_parabolic(alg, p, &dc.delta) {
        return Err(Error::InvalidParams(format!("P not δ-symmetric for δ = {:?}", dc.delta.0)));
    }
    let tail = theta_tail(alg, &dc, p, &alg.base.one())?;
    let value = alg.mul(&alg.y_lambda(&dc.lambda)?, &tail);
    Ok(SchurElt { source: dc.mu, target: dc.lambda, value, tail })
}

/// `H_g P y^δ_μ c`.
fn theta_tail(alg: &Algebra, dc: &DoubleCoset, p: &BaseElt, c: &BaseElt) -> Result<QwpElt> {
    let head = alg.base_times_h(p, &Perm::identity(alg.d()));
    let hg = alg.mul(&alg.h_w(&dc.g), &head);
    let yd = alg.y_delta_mu(&dc.delta, &dc.mu)?;
    Ok(alg.right_mul_base(&alg.mul(&hg, &yd), c))
}

/// The identity endomorphism of `y_λ H`.
pub fn schur_identity(alg: &Algebra, lambda: &Composition) -> Result<SchurElt> {
    let n = lambda.0.len();
    let mut a = vec![vec![0; n]; n];
    for (i, &p) in lambda.0.iter().enumerate() {
        a[i][i] = p;
    }
    theta_build(alg, &a, &alg.base.one())
}

/// Writes `h ∈ y_λ H` as `Σ_η y_λ H_η b_η` by peeling the longest support terms.
pub fn perm_module_expand(alg: &Algebra, lambda: &Composition, h: &QwpElt) -> Result<PermModExpansion> {
    let top = lambda.longest();
    let y = alg.y_lambda(lambda)?;
    let mut rest = h.clone();
    let mut out: std::collections::BTreeMap<Perm, BaseElt> = Default::default();
    while let Some(w) = leading_perm(&rest) {
        let (u, eta) = factor_left(&w, lambda);
        if u != top {
            return Err(Error::NotInSubspace(format!("not in y_λH: leading term H_{w} has Σ_λ part {u}")));
        }
        let coeff = coefficient_at(&rest, &w);
        let b = alg.base.sigma_perm(&w.inverse(), &coeff);
        let piece = alg.right_mul_base(&alg.mul(&y, &alg.h_w(&eta)), &b);
        rest.sub_assign(&piece);
        if rest.keys().any(|k| k.w == w) {
            return Err(Error::Decomposition(format!("peeling at {w} left a residue")));
        }
        out.entry(eta).or_default().add_assign(&b);
    }
    Ok(out.into_iter().filter(|(_, b)| !b.is_zero()).collect())
}

/// `Σ_η y_λ H_η b_η`.
pub fn perm_module_reassemble(alg: &Algebra, lambda: &Composition, exp: &PermModExpansion) -> Result<QwpElt> {
    let y = alg.y_lambda(lambda)?;
    let mut out = QwpElt::zero();
    for (eta, b) in exp {
        out.add_assign(&alg.right_mul_base(&alg.mul(&y, &alg.h_w(eta)), b));
    }
    Ok(out)
}

/// `θ' ∘ θ`: `θ'(θ(y_ν)) = θ'(y_μ) · tail(θ)`.
pub fn schur_compose(alg: &Algebra, f: &SchurElt, g: &SchurElt) -> Result<SchurElt> {
    if f.source != g.target {
        return Err(Error::IllegalCombination(format!(
            "composition shape mismatch: source {:?} vs target {:?}",
            f.source.0, g.target.0
        )));
    }
    Ok(SchurElt {
        source: g.source.clone(),
        target: f.target.clone(),
        value: alg.mul(&f.value, &g.tail),
        tail: alg.mul(&f.tail, &g.tail),
    })
}

/// Splits `s.value` into `Σ y_λ H_g P_g y^δ_ν c_g`, peeling double cosets from the top.
pub fn theta_decompose(alg: &Algebra, s: &SchurElt) -> Result<Vec<ThetaTerm>> {
    let (lambda, nu) = (&s.target, &s.source);
    let mut rest = s.value.clone();
    let mut out = Vec::new();
    while let Some(w) = leading_perm(&rest) {
        let g = double_coset_min(&w, lambda, nu);
        let matrix = triple_to_matrix(lambda, &g, nu)?;
        let dc = matrix_to_triple(&matrix)?;
        if dc.g != g || dc.longest_a() != w {
            return Err(Error::Decomposition(format!("peeling failed: leading term H_{w} is not a double coset top")));
        }
        let coeff = coefficient_at(&rest, &w);
        let front = dc.longest_lambda().compose(&g);
        let p = alg.base.sigma_perm(&front.inverse(), &coeff);
        let (p, c) = if commutes_with_parabolic(alg, &p, &dc.delta) {
            (p, alg.base.one())
        } else {
            (alg.base.one(), alg.base.sigma_perm(&w.inverse(), &coeff))
        };
        let piece = alg.mul(&alg.y_lambda(lambda)?, &theta_tail(alg, &dc, &p, &c)?);
        let before = rest.clone();
        rest.sub_assign(&piece);
        if rest.keys().any(|k| k.w == w) || rest == before {
            return Err(Error::Decomposition(format!("peeling failed at {w}")));
        }
        out.push(ThetaTerm { matrix, p, c });
    }
    Ok(out)
}

/// `Σ y_λ H_g P y^δ_ν c` over the terms.
pub fn theta_reassemble(alg: &Algebra, terms: &[ThetaTerm]) -> Result<QwpElt> {
    let mut out = QwpElt::zero();
    for t in terms {
        let dc = matrix_to_triple(&t.matrix)?;
        out.add_assign(&alg.mul(&alg.y_lambda(&dc.lambda)?, &theta_tail(alg, &dc, &t.p, &t.c)?));
    }
    Ok(out)
}

/// Longest permutation in the support, ties broken by the largest one-line word.
fn leading_perm(h: &QwpElt) -> Option<Perm> {
    h.keys().map(|k| &k.w).max_by(|a, b| (a.length(), *a).cmp(&(b.length(), *b))).cloned()
}

fn coefficient_at(h: &QwpElt, w: &Perm) -> BaseElt {
    h.iter().filter(|(k, _)| k.w == *w).map(|(k, c)| (k.b.clone(), c.clone())).collect()
}

/// A base element from `(t, x, coefficient)` triples with integer coefficients.
pub fn base_from_terms(alg: &Algebra, terms: &[(&[i64], &[i32], i64)]) -> BaseElt {
    let mut out: Lc<BaseMono> = Lc::zero();
    for (t, x, c) in terms {
        out.add_term(alg.base.mono(t, x), alg.ring().int(*c));
    }
    out
}

pub fn schur_to_json(alg: &Algebra, s: &SchurElt) -> Value {
    json!({
        "source": s.source.0,
        "target": s.target.0,
        "value": alg.to_json(&s.value),
        "tail": alg.to_json(&s.tail),
    })
}

pub fn schur_from_json(alg: &Algebra, v: &Value) -> Result<SchurElt> {
    let comp = |key: &str| -> Result<Composition> {
        serde_json::from_value(v.get(key).cloned().unwrap_or(Value::Null))
            .map(Composition)
            .map_err(|e| Error::Malformed(format!("{key}: {e}")))
    };
    let field = |key: &str| v.get(key).ok_or_else(|| Error::Malformed(format!("missing {key}")));
    let s = SchurElt {
        source: comp("source")?,
        target: comp("target")?,
        value: alg.from_json(field("value")?)?,
        tail: alg.from_json(field("tail")?)?,
    };
    if s.source.size() != alg.d() || s.target.size() != alg.d() {
        return Err(Error::Malformed("composition size differs from rank".into()));
    }
    Ok(s)
}

pub fn expansion_to_json(alg: &Algebra, exp: &PermModExpansion) -> Value {
    Value::Array(
        exp.iter()
            .map(|(eta, b)| json!({"eta": eta.one_line(), "word": eta.reduced_word(), "b": alg.base_to_json(b)}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Params;

    fn alg(q: u64, n: u64, k: u64, d: usize) -> Algebra {
        Algebra::from_params(&Params::new(q, n, k, d, 1).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_identity() {
        let a = alg(5, 2, 0, 3);
        let lam = Composition::new(&[2, 1]);
        let id = schur_identity(&a, &lam).unwrap();
        assert_eq!(id.value, a.y_lambda(&lam).unwrap());
        let exp = perm_module_expand(&a, &lam, &id.value).unwrap();
        assert_eq!(exp, vec![(Perm::identity(3), a.base.one())]);
        let zero = theta_build(&a, &vec![vec![2, 0], vec![0, 1]], &BaseElt::zero()).unwrap();
        assert!(zero.value.is_zero());
    }

    #[test]
    fn rejects_non_symmetric_p() {
        let a = alg(5, 2, 0, 2);
        let p = a.base.x(1, 1);
        assert!(theta_build(&a, &vec![vec![2]], &p).is_err());
        assert!(theta_build(&a, &vec![vec![1, 0], vec![0, 1]], &p).is_ok());
    }

    #[test]
    fn expansion_roundtrip() {
        let a = alg(7, 3, 0, 3);
        let lam = Composition::new(&[2, 1]);
        let y = a.y_lambda(&lam).unwrap();
        let h = a.mul(&y, &a.mul(&a.h(2), &a.from_base(&a.base.elt(&[1, 0, 2], &[0, 1, -1]))));
        let exp = perm_module_expand(&a, &lam, &h).unwrap();
        assert_eq!(perm_module_reassemble(&a, &lam, &exp).unwrap(), h);
        assert!(perm_module_expand(&a, &lam, &a.h(1)).is_err());
    }

    #[test]
    fn build_decompose_compose() {
        let a = alg(5, 2, 2, 3);
        let m = vec![vec![1, 1], vec![1, 0]];
        let dc = matrix_to_triple(&m).unwrap();
        let p = symmetrize(&a, &a.base.elt(&[1, 0, 0], &[0, 0, 0]), &dc.delta);
        let th = theta_build(&a, &m, &p).unwrap();
        let terms = theta_decompose(&a, &th).unwrap();
        assert_eq!(theta_reassemble(&a, &terms).unwrap(), th.value);
        let left = schur_identity(&a, &th.target).unwrap();
        let right = schur_identity(&a, &th.source).unwrap();
        assert_eq!(schur_compose(&a, &left, &th).unwrap().value, th.value);
        assert_eq!(schur_compose(&a, &th, &right).unwrap().value, th.value);
        assert!(schur_compose(&a, &th, &left).is_err() || th.source == th.target);
    }
}
