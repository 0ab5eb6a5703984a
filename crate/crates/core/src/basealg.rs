//! The base algebra `A^{⊗d}` with `A = C[C_m][x^{±1}; ψ]`, stored in torus-left
//! normal order `t^a x^λ`, together with the place permutations `σ_i`, the twisted
//! derivations `ρ_i` and the distinguished torus elements.

use crate::error::{Error, Result};
use crate::lc::Lc;
use crate::scalar::{Scalar, ScalarRing};
use crate::symgroup::Perm;

/// Monomial `t^a x^λ` with `a` reduced modulo the torus order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseMono {
    pub t: Vec<u16>,
    pub x: Vec<i32>,
}

pub type BaseElt = Lc<BaseMono>;
/// A base element whose Laurent exponents all vanish.
pub type TorusElt = BaseElt;
/// Coefficients in the idempotent basis `t'_a = ⊗ _{a_i}t'`, keyed by `a`.
pub type TPrimeTable = Lc<Vec<u16>>;

impl BaseMono {
    pub fn one(d: usize) -> BaseMono {
        BaseMono { t: vec![0; d], x: vec![0; d] }
    }

    pub fn is_torus(&self) -> bool {
        self.x.iter().all(|&e| e == 0)
    }
}

/// Arithmetic context for the base algebra. `torus` is the order of the cyclic factor
/// (either `m` or 1), `x t^j = ζ_m^{psi·j} t^j x`, and Laurent exponents live in
/// `step·Z`.
#[derive(Clone, Debug)]
pub struct BaseRing {
    pub ring: ScalarRing,
    pub d: usize,
    pub torus: usize,
    pub psi: i64,
    pub step: i32,
    pub q: u64,
}

impl BaseRing {
    pub fn new(ring: ScalarRing, d: usize, torus: usize, psi: i64, step: i32, q: u64) -> BaseRing {
        assert!(torus == 1 || torus == ring.m(), "torus order must be 1 or m");
        BaseRing { ring, d, torus, psi, step, q }
    }

    pub fn check_mono(&self, b: &BaseMono) -> Result<()> {
        if b.t.len() != self.d || b.x.len() != self.d {
            return Err(Error::Malformed(format!("monomial of rank {} in rank {}", b.t.len(), self.d)));
        }
        if b.t.iter().any(|&a| a as usize >= self.torus) {
            return Err(Error::Malformed(format!("torus exponent {:?} not reduced mod {}", b.t, self.torus)));
        }
        if b.x.iter().any(|&e| e % self.step != 0) {
            return Err(Error::Malformed(format!("Laurent exponents {:?} not in {}Z", b.x, self.step)));
        }
        Ok(())
    }

    pub fn check(&self, b: &BaseElt) -> Result<()> {
        for (k, c) in b.iter() {
            self.check_mono(k)?;
            self.ring.check(c)?;
        }
        Ok(())
    }

    pub fn mono(&self, t: &[i64], x: &[i32]) -> BaseMono {
        BaseMono { t: t.iter().map(|&a| a.rem_euclid(self.torus as i64) as u16).collect(), x: x.to_vec() }
    }

    pub fn elt(&self, t: &[i64], x: &[i32]) -> BaseElt {
        Lc::term(self.mono(t, x), self.ring.one())
    }

    pub fn one(&self) -> BaseElt {
        Lc::term(BaseMono::one(self.d), self.ring.one())
    }

    pub fn scalar(&self, c: Scalar) -> BaseElt {
        Lc::term(BaseMono::one(self.d), c)
    }

    /// `t_slot^j` (slots are 1-based).
    pub fn t(&self, slot: usize, j: i64) -> BaseElt {
        let mut t = vec![0; self.d];
        t[slot - 1] = j;
        self.elt(&t, &vec![0; self.d])
    }

    /// `x_slot^e`.
    pub fn x(&self, slot: usize, e: i32) -> BaseElt {
        let mut x = vec![0; self.d];
        x[slot - 1] = e;
        self.elt(&vec![0; self.d], &x)
    }

    pub fn mul_mono(&self, a: &BaseMono, b: &BaseMono) -> (i64, BaseMono) {
        let tor = self.torus as u32;
        let mut twist = 0i64;
        if self.psi != 0 {
            for (l, &bt) in a.x.iter().zip(&b.t) {
                twist += *l as i64 * bt as i64;
            }
            twist *= self.psi;
        }
        let t = a.t.iter().zip(&b.t).map(|(&u, &v)| ((u as u32 + v as u32) % tor) as u16).collect();
        let x = a.x.iter().zip(&b.x).map(|(u, v)| u + v).collect();
        (twist, BaseMono { t, x })
    }

    pub fn mul(&self, a: &BaseElt, b: &BaseElt) -> BaseElt {
        let mut out = BaseElt::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                let (tw, k) = self.mul_mono(ka, kb);
                let c = self.ring.mul(ca, cb);
                out.add_term(k, self.ring.mul_root(&c, tw));
            }
        }
        out
    }

    pub fn mul3(&self, a: &BaseElt, b: &BaseElt, c: &BaseElt) -> BaseElt {
        self.mul(&self.mul(a, b), c)
    }

    pub fn scale(&self, a: &BaseElt, c: &Scalar) -> BaseElt {
        a.scale(&self.ring, c)
    }

    /// Place permutation by `s_i`.
    pub fn sigma(&self, i: usize, b: &BaseElt) -> BaseElt {
        b.map_keys(|k| {
            let mut k = k.clone();
            k.t.swap(i - 1, i);
            k.x.swap(i - 1, i);
            k
        })
    }

    /// Place permutation `σ_w = σ_{i_1} ∘ ... ∘ σ_{i_r}` for `w = s_{i_1} ... s_{i_r}`.
    pub fn sigma_perm(&self, w: &Perm, b: &BaseElt) -> BaseElt {
        if w.is_identity() {
            return b.clone();
        }
        b.map_keys(|k| BaseMono { t: w.act_on(&k.t), x: w.act_on(&k.x) })
    }

    /// `(1/torus) Σ_j t_a^j t_b^{-j}` for slots `a != b`.
    pub fn e_pair(&self, a: usize, b: usize) -> TorusElt {
        let n = self.torus as i64;
        let c = self.ring.rational(1, n).expect("nonzero");
        let mut out = BaseElt::zero();
        for j in 0..n {
            let mut t = vec![0; self.d];
            t[a - 1] = j;
            t[b - 1] = -j;
            out.add_term(self.mono(&t, &vec![0; self.d]), c.clone());
        }
        out
    }

    /// `(q - 1) e` on the slot pair.
    pub fn s_pair(&self, a: usize, b: usize) -> TorusElt {
        self.scale(&self.e_pair(a, b), &self.ring.int(self.q as i64 - 1))
    }

    /// `q t_a^k t_b^k`.
    pub fn r_pair(&self, a: usize, b: usize, k: u64) -> TorusElt {
        let mut t = vec![0; self.d];
        t[a - 1] = k as i64;
        t[b - 1] = k as i64;
        Lc::term(self.mono(&t, &vec![0; self.d]), self.ring.int(self.q as i64))
    }

    pub fn e(&self, i: usize) -> TorusElt {
        self.e_pair(i, i + 1)
    }

    pub fn s(&self, i: usize) -> TorusElt {
        self.s_pair(i, i + 1)
    }

    pub fn r(&self, i: usize, k: u64) -> TorusElt {
        self.r_pair(i, i + 1, k)
    }

    /// Applies `ψ^r` to the torus factor in `slot`, i.e. `t^j ↦ ζ^{psi·r·j} t^j` there.
    pub fn shift_delta(&self, delta: &TorusElt, slot: usize, r: i64) -> TorusElt {
        let mut out = BaseElt::zero();
        for (k, c) in delta.iter() {
            let tw = self.psi * r * k.t[slot - 1] as i64;
            out.add_term(k.clone(), self.ring.mul_root(c, tw));
        }
        out
    }

    /// The twisted derivation `ρ_i`: `ρ_i(f P) = σ_i(f) ρ_i(P)` for torus `f`, with
    /// other slots carried along. On `x_i^a x_{i+1}^b` with `a > b` and `g = a - b` it is
    /// `Σ_{l<g} x_i^b x_{i+1}^{b+l} S_i x_i^{g-l}`, and the negated mirror image when `a < b`.
    pub fn rho(&self, i: usize, b: &BaseElt) -> BaseElt {
        let st = self.step;
        let tor = self.torus as i64;
        let unit = self.ring.rational(self.q as i64 - 1, tor).expect("nonzero");
        let mut out = BaseElt::zero();
        for (k, c) in b.iter() {
            let (a, bb) = (k.x[i - 1] / st, k.x[i] / st);
            if a == bb {
                continue;
            }
            let base_c = self.ring.mul(c, &unit);
            let base_c = if a > bb { base_c } else { -base_c };
            let lo = a.min(bb) as i64;
            let gap = (a - bb).abs() as i64;
            for l in 0..gap {
                // exponents after moving S_i = (q-1)/torus Σ_j t_i^j t_{i+1}^{-j} into place
                let (xa, xb) = (lo + gap - l, lo + l);
                let per_j = if a > bb { -l } else { gap - l };
                for j in 0..tor {
                    let mut t = k.t.clone();
                    t.swap(i - 1, i);
                    t[i - 1] = ((t[i - 1] as i64 + j).rem_euclid(tor)) as u16;
                    t[i] = ((t[i] as i64 - j).rem_euclid(tor)) as u16;
                    let mut x = k.x.clone();
                    x[i - 1] = xa as i32 * st;
                    x[i] = xb as i32 * st;
                    let tw = self.psi * per_j * j * st as i64;
                    out.add_term(BaseMono { t, x }, self.ring.mul_root(&base_c, tw));
                }
            }
        }
        out
    }

    fn require_full_torus(&self) -> Result<()> {
        if self.torus != self.ring.m() {
            return Err(Error::IllegalCombination("idempotent t' needs the full torus".into()));
        }
        Ok(())
    }

    /// `_j t' = (1/m) Σ_i (u^j t)^i` in a slot, with `u = ζ_m`.
    pub fn tprime(&self, slot: usize, j: i64) -> Result<TorusElt> {
        self.require_full_torus()?;
        let m = self.torus as i64;
        let inv = self.ring.rational(1, m)?;
        let mut out = BaseElt::zero();
        for i in 0..m {
            let mut t = vec![0; self.d];
            t[slot - 1] = i;
            out.add_term(self.mono(&t, &vec![0; self.d]), self.ring.mul_root(&inv, j * i));
        }
        Ok(out)
    }

    /// `c(χ^γ) = ⊗_i _{γ_i}t'`.
    pub fn c_chi(&self, gamma: &[i64]) -> Result<TorusElt> {
        if gamma.len() != self.d {
            return Err(Error::Malformed("character has wrong rank".into()));
        }
        let mut out = self.one();
        for (slot, &g) in gamma.iter().enumerate() {
            out = self.mul(&out, &self.tprime(slot + 1, g)?);
        }
        Ok(out)
    }

    /// `ε_I = t' ⊗ ... ⊗ t'` with `t' = _0 t'`.
    pub fn eps_i(&self) -> Result<TorusElt> {
        self.c_chi(&vec![0; self.d])
    }

    /// Converts a torus element to the `t'` basis via `t^b = Σ_a u^{-a·b} t'_a`.
    pub fn to_tprime(&self, f: &TorusElt) -> Result<TPrimeTable> {
        self.require_full_torus()?;
        let mut out = TPrimeTable::zero();
        let all = all_vectors(self.d, self.torus);
        for (k, c) in f.iter() {
            if !k.is_torus() {
                return Err(Error::Malformed("t' conversion needs a torus element".into()));
            }
            for a in &all {
                let dot: i64 = a.iter().zip(&k.t).map(|(&x, &y)| x as i64 * y as i64).sum();
                out.add_term(a.clone(), self.ring.mul_root(c, -dot));
            }
        }
        Ok(out)
    }

    /// Inverse of [`BaseRing::to_tprime`].
    pub fn from_tprime(&self, table: &TPrimeTable) -> Result<TorusElt> {
        self.require_full_torus()?;
        let mut out = BaseElt::zero();
        for (a, c) in table.iter() {
            let g: Vec<i64> = a.iter().map(|&v| v as i64).collect();
            out.add_scaled(&self.ring, &self.c_chi(&g)?, c);
        }
        Ok(out)
    }
}

/// All vectors in `[0, m)^d`, lexicographic.
pub fn all_vectors(d: usize, m: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m as u16).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Params;

    fn skew(q: u64, n: u64, d: usize) -> BaseRing {
        let p = Params::new(q, n, 0, d, 1).unwrap();
        BaseRing::new(ScalarRing::from_params(&p), d, p.m() as usize, p.psi_exp() as i64, 1, q)
    }

    /// Independent model: `x t^j = ξ^{2j} t^j x` with `ξ = ζ^{m/n}`, one slot at a time.
    fn oracle_mul(r: &BaseRing, a: &BaseMono, b: &BaseMono) -> (i64, BaseMono) {
        let m = r.torus as i64;
        let mut tw = 0;
        let mut t = vec![];
        let mut x = vec![];
        for s in 0..r.d {
            // push x^{a.x} past t^{b.t} one letter at a time
            let steps = a.x[s].unsigned_abs() as i64;
            for _ in 0..steps {
                tw += a.x[s].signum() as i64 * r.psi * b.t[s] as i64;
            }
            t.push(((a.t[s] as i64 + b.t[s] as i64) % m) as u16);
            x.push(a.x[s] + b.x[s]);
        }
        (tw, BaseMono { t, x })
    }

    #[test]
    fn monomial_product_matches_letterwise_model() {
        let r = skew(7, 3, 2);
        for a0 in 0..6 {
            for l in -2..=2 {
                let a = r.mono(&[a0, 1], &[l, -1]);
                let b = r.mono(&[2, a0], &[1, l]);
                let (tw1, m1) = r.mul_mono(&a, &b);
                let (tw2, m2) = oracle_mul(&r, &a, &b);
                assert_eq!(m1, m2);
                assert_eq!((tw1 - tw2).rem_euclid(6), 0);
            }
        }
    }

    #[test]
    fn associativity_and_sigma_automorphism() {
        let r = skew(5, 2, 2);
        let gens = [r.t(1, 1), r.t(2, 3), r.x(1, 1), r.x(2, -1), r.e(1)];
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
                }
                assert_eq!(r.sigma(1, &r.mul(a, b)), r.mul(&r.sigma(1, a), &r.sigma(1, b)));
            }
        }
    }

    #[test]
    fn rho_small_values() {
        let r = skew(5, 2, 2);
        let s = r.s(1);
        // ρ(x_1) = S x_1, ρ(x_2) = -x_1 S, ρ(x_1 x_2) = 0
        assert_eq!(r.rho(1, &r.x(1, 1)), r.mul(&s, &r.x(1, 1)));
        assert_eq!(r.rho(1, &r.x(2, 1)), r.mul(&r.x(1, 1), &s).neg());
        assert_eq!(r.rho(1, &r.mul(&r.x(1, 1), &r.x(2, 1))), BaseElt::zero());
        // ρ(x_1^{-1}) = -x_2^{-1} S, ρ(x_2^{-1}) = S x_2^{-1}
        assert_eq!(r.rho(1, &r.x(1, -1)), r.mul(&r.x(2, -1), &s).neg());
        assert_eq!(r.rho(1, &r.x(2, -1)), r.mul(&s, &r.x(2, -1)));
    }

    #[test]
    fn rho_squares() {
        let r = skew(5, 2, 2);
        let s = r.s(1);
        let x1 = r.x(1, 1);
        let x2 = r.x(2, 1);
        // ρ(x_1^2) = S x_1^2 + x_2 S x_1 = x_1^2 S^{(-2)} + x_1 x_2 S^{(-1)}
        let want = r.mul(&s, &r.x(1, 2)).plus(&r.mul3(&x2, &s, &x1));
        assert_eq!(r.rho(1, &r.x(1, 2)), want);
        let shifted = r
            .mul(&r.x(1, 2), &r.shift_delta(&s, 1, -2))
            .plus(&r.mul(&r.mul(&x1, &x2), &r.shift_delta(&s, 1, -1)));
        assert_eq!(want, shifted);
        // ρ(x_2^2) = -x_1^2 S - x_1 x_2 S^{(1)}
        let want2 = r
            .mul(&r.x(1, 2), &s)
            .plus(&r.mul(&r.mul(&x1, &x2), &r.shift_delta(&s, 1, 1)))
            .neg();
        assert_eq!(r.rho(1, &r.x(2, 2)), want2);
    }

    #[test]
    fn delta_shift_identities() {
        let r = skew(7, 3, 2);
        let e = r.e(1);
        assert_eq!(r.mul(&e, &r.x(2, 1)), r.mul(&r.x(2, 1), &r.shift_delta(&e, 1, 1)));
        assert_eq!(r.mul(&e, &r.x(1, 1)), r.mul(&r.x(1, 1), &r.shift_delta(&e, 1, -1)));
        let s = r.s(1);
        assert_eq!(r.mul(&s, &r.x(2, 1)), r.mul(&r.x(2, 1), &r.shift_delta(&s, 1, 1)));
    }

    #[test]
    fn idempotents() {
        let r = skew(5, 2, 2);
        let e = r.e(1);
        assert_eq!(r.mul(&e, &e), e);
        let eps = r.eps_i().unwrap();
        assert_eq!(r.mul(&eps, &eps), eps);
        assert_eq!(r.mul(&eps, &r.t(1, 1)), eps);
        assert_eq!(r.mul(&e, &eps), eps);
        let mut total = BaseElt::zero();
        for a in all_vectors(2, 4) {
            let g: Vec<i64> = a.iter().map(|&v| v as i64).collect();
            let c = r.c_chi(&g).unwrap();
            assert_eq!(r.mul(&c, &c), c);
            total.add_assign(&c);
        }
        assert_eq!(total, r.one());
    }

    #[test]
    fn tprime_roundtrip() {
        let r = skew(7, 3, 2);
        let f = r.e(1).plus(&r.t(1, 2)).plus(&r.scale(&r.t(2, 5), &r.ring.sqrt_q()));
        let table = r.to_tprime(&f).unwrap();
        assert_eq!(r.from_tprime(&table).unwrap(), f);
    }

    #[test]
    fn eps_kills_unbalanced_laurent() {
        // ε_I x^λ ε_I vanishes unless every ξ^{2λ_i} = 1
        let r = skew(7, 3, 2);
        let eps = r.eps_i().unwrap();
        for l1 in -3..=3 {
            for l2 in -3..=3 {
                let v = r.mul3(&eps, &r.elt(&[0, 0], &[l1, l2]), &eps);
                assert_eq!(v.is_zero(), l1 % 3 != 0 || l2 % 3 != 0, "{l1} {l2}");
            }
        }
    }
}
