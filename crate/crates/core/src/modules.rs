//! Right modules: the KMS-type tensor space, wreath modules, the finite
//! Gelfand-Graev representation and the comparison maps between them.

use serde_json::{json, Value};

use crate::basealg::{BaseElt, BaseMono, TPrimeTable};
use crate::error::{Error, Result};
use crate::lc::Lc;
use crate::qwp::{Algebra, QwpElt};
use crate::scalar::Scalar;
use crate::symgroup::{Composition, Perm};

/// Basis vector `v_f t^a` of the tensor space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMono {
    pub f: Vec<i64>,
    pub t: Vec<u16>,
}

pub type TensorElt = Lc<TensorMono>;

/// How `H_i` acts on `v_f` when `f(i) = f(i+1)` inside the fundamental region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmsVariant {
    /// `v_f · H_i = -v_f γ_i`.
    Sign,
    /// `v_f · H_i = v_f γ̄_i`.
    Trivial,
}

/// `V(N)^{⊗d}` as a right module over an algebra: one lattice step of `x_i` raises the
/// height `f(i)` by `level`, and heights in `[1, level]` form the fundamental region.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub alg: Algebra,
    pub level: i64,
    pub variant: KmsVariant,
    /// Per index `i`: the equal-height eigenvalue, `S_i` and `R_i`.
    consts: Vec<(BaseElt, BaseElt, BaseElt)>,
}

impl TensorSpace {
    pub fn new(alg: &Algebra, level: i64, variant: KmsVariant) -> Result<TensorSpace> {
        if level < 1 {
            return Err(Error::InvalidParams("level must be positive".into()));
        }
        let consts = (0..alg.d())
            .map(|i| {
                if i == 0 {
                    return Default::default();
                }
                let eq = match variant {
                    KmsVariant::Sign => alg.gamma(i).neg(),
                    KmsVariant::Trivial => alg.gamma_bar(i),
                };
                (eq, alg.s(i), alg.r(i))
            })
            .collect();
        Ok(TensorSpace { alg: alg.clone(), level, variant, consts })
    }

    /// `V(N)^{⊗d}` over `alg` with its own lattice step.
    pub fn kms(alg: &Algebra, big_n: usize) -> Result<TensorSpace> {
        TensorSpace::new(alg, big_n as i64, KmsVariant::Sign)
    }

    fn d(&self) -> usize {
        self.alg.d()
    }

    pub fn vector(&self, f: &[i64]) -> TensorElt {
        Lc::term(TensorMono { f: f.to_vec(), t: vec![0; self.d()] }, self.alg.ring().one())
    }

    pub fn vector_t(&self, f: &[i64], t: &[i64]) -> TensorElt {
        let t = self.alg.base.mono(t, &vec![0; self.d()]).t;
        Lc::term(TensorMono { f: f.to_vec(), t }, self.alg.ring().one())
    }

    pub fn check(&self, v: &TensorElt) -> Result<()> {
        for (k, c) in v.iter() {
            if k.f.len() != self.d() || k.t.len() != self.d() {
                return Err(Error::Malformed("tensor basis vector of wrong rank".into()));
            }
            if k.t.iter().any(|&a| a as usize >= self.alg.base.torus) {
                return Err(Error::Malformed("torus exponent not reduced".into()));
            }
            self.alg.ring().check(c)?;
        }
        Ok(())
    }

    /// Splits `f = f_0 + level·λ` with `f_0` fundamental; returns `(f_0, λ)`.
    pub fn fundamental(&self, f: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let lam: Vec<i64> = f.iter().map(|&h| (h - 1).div_euclid(self.level)).collect();
        let f0 = f.iter().zip(&lam).map(|(&h, &l)| h - self.level * l).collect();
        (f0, lam)
    }

    fn act_mono(&self, key: &TensorMono, c: &Scalar, b: &BaseMono, cb: &Scalar, out: &mut TensorElt) {
        let base = &self.alg.base;
        let tor = base.torus as u32;
        let t: Vec<u16> = key.t.iter().zip(&b.t).map(|(&u, &v)| ((u as u32 + v as u32) % tor) as u16).collect();
        let step = base.step;
        let mut twist = 0i64;
        let mut f = key.f.clone();
        for s in 0..self.d() {
            twist -= b.x[s] as i64 * t[s] as i64;
            f[s] += self.level * (b.x[s] / step) as i64;
        }
        let coeff = base.ring.mul_root(&base.ring.mul(c, cb), base.psi * twist);
        out.add_term(TensorMono { f, t }, coeff);
    }

    /// `v · b` for a base element `b`.
    pub fn act_base(&self, v: &TensorElt, b: &BaseElt) -> TensorElt {
        let mut out = TensorElt::zero();
        for (k, c) in v.iter() {
            for (kb, cb) in b.iter() {
                self.act_mono(k, c, kb, cb, &mut out);
            }
        }
        out
    }

    /// `v_{f_0} · H_i` for fundamental `f_0`, no torus part.
    fn act_h_fundamental(&self, f0: &[i64], i: usize) -> TensorElt {
        let (eq, s, r) = &self.consts[i];
        let v = self.vector(f0);
        let mut swapped = f0.to_vec();
        swapped.swap(i - 1, i);
        let (a, b) = (f0[i - 1], f0[i]);
        if a < b {
            self.vector(&swapped)
        } else if a == b {
            self.act_base(&v, eq)
        } else {
            self.act_base(&self.vector(&swapped), r).plus(&self.act_base(&v, s))
        }
    }

    /// `v · H_i`, reducing to the fundamental region through
    /// `b H_i = H_i σ_i(b) - ρ_i(σ_i(b))`.
    pub fn act_h(&self, v: &TensorElt, i: usize) -> TensorElt {
        let base = &self.alg.base;
        let mut out = TensorElt::zero();
        for (k, c) in v.iter() {
            let (f0, lam) = self.fundamental(&k.f);
            let x: Vec<i32> = lam.iter().map(|&l| l as i32 * base.step).collect();
            // v_f t^a = ζ^{psi Σ x_s a_s} v_{f_0} · (t^a x^x)
            let twist: i64 = x.iter().zip(&k.t).map(|(&e, &a)| e as i64 * a as i64).sum::<i64>() * base.psi;
            let coeff = base.ring.mul_root(c, twist);
            let b = Lc::term(BaseMono { t: k.t.clone(), x }, coeff);
            let sb = base.sigma(i, &b);
            let head = self.act_base(&self.act_h_fundamental(&f0, i), &sb);
            let tail = self.act_base(&self.vector(&f0), &base.rho(i, &sb));
            out.add_assign(&head);
            out.sub_assign(&tail);
        }
        out
    }

    pub fn act(&self, v: &TensorElt, h: &QwpElt) -> TensorElt {
        let mut out = TensorElt::zero();
        let mut groups: std::collections::BTreeMap<Perm, BaseElt> = Default::default();
        for (k, c) in h.iter() {
            groups.entry(k.w.clone()).or_default().add_term(k.b.clone(), c.clone());
        }
        for (w, b) in groups {
            let mut cur = self.act_base(v, &b);
            for i in w.reduced_word() {
                cur = self.act_h(&cur, i);
            }
            out.add_assign(&cur);
        }
        out
    }

    pub fn to_json(&self, v: &TensorElt) -> Value {
        let terms: Vec<Value> = v.iter().map(|(k, c)| json!({"f": k.f, "t": k.t, "c": c.to_json()})).collect();
        json!({"terms": terms})
    }

    pub fn from_json(&self, v: &Value) -> Result<TensorElt> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("missing terms".into()))?;
        let mut out = TensorElt::zero();
        for t in terms {
            let f: Vec<i64> = serde_json::from_value(t.get("f").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Malformed(format!("f: {e}")))?;
            let tv: Vec<i64> = match t.get("t") {
                Some(x) => serde_json::from_value(x.clone()).map_err(|e| Error::Malformed(format!("t: {e}")))?,
                None => vec![0; self.d()],
            };
            if tv.len() != self.d() || tv.iter().any(|&a| a < 0 || a as usize >= self.alg.base.torus) {
                return Err(Error::Malformed(format!("torus exponent {tv:?}")));
            }
            let c = self.alg.ring().parse_json(t.get("c").unwrap_or(&Value::Null))?;
            out.add_term(TensorMono { f, t: tv.iter().map(|&a| a as u16).collect() }, c);
        }
        self.check(&out)?;
        Ok(out)
    }
}

/// The summand `M^λ` containing `v_f`: `λ_j` counts the slots whose height is `j` mod `N`.
pub fn mlambda_membership(f: &[i64], big_n: usize) -> Composition {
    let mut parts = vec![0; big_n];
    for &h in f {
        parts[((h - 1).rem_euclid(big_n as i64)) as usize] += 1;
    }
    Composition(parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpechtKind {
    /// `1 · H_j = γ̄_j`.
    Triv,
    /// `1 · H_j = -γ_j`.
    Sgn,
}

/// Wreath module with one generator `v⁺` over `A^{⊗d}`; elements `v⁺ b` are stored as `b`.
/// The same formulas describe `M_i ≀ S` for every base index `i` and, with no index, the
/// regular module over `A^{⊗d}` itself (spherical for `Triv`, antispherical for `Sgn`).
#[derive(Clone, Debug)]
pub struct WreathModule {
    pub alg: Algebra,
    pub kind: SpechtKind,
    /// `Some(i)` for `M_i ≀ S`, `None` for the regular module.
    pub index: Option<i64>,
}

impl WreathModule {
    /// The regular module.
    pub fn new(alg: &Algebra, kind: SpechtKind) -> WreathModule {
        WreathModule { alg: alg.clone(), kind, index: None }
    }

    pub fn with_index(alg: &Algebra, kind: SpechtKind, index: i64) -> WreathModule {
        WreathModule { alg: alg.clone(), kind, index: Some(index) }
    }

    pub fn generator(&self) -> BaseElt {
        self.alg.base.one()
    }

    fn specht(&self, j: usize) -> BaseElt {
        match self.kind {
            SpechtKind::Triv => self.alg.gamma_bar(j),
            SpechtKind::Sgn => self.alg.gamma(j).neg(),
        }
    }

    /// `(v⁺ b)·H_j = v⁺ (s_j σ_j(b) - ρ_j(σ_j(b)))` with `s_j` the Specht eigenvalue.
    pub fn act_h(&self, v: &BaseElt, j: usize) -> BaseElt {
        let base = &self.alg.base;
        let sb = base.sigma(j, v);
        base.mul(&self.specht(j), &sb).minus(&base.rho(j, &sb))
    }

    pub fn act(&self, v: &BaseElt, h: &QwpElt) -> BaseElt {
        let base = &self.alg.base;
        let mut out = BaseElt::zero();
        for (k, c) in h.iter() {
            let mut cur = base.mul(v, &Lc::term(k.b.clone(), c.clone()));
            for i in k.w.reduced_word() {
                cur = self.act_h(&cur, i);
            }
            out.add_assign(&cur);
        }
        out
    }

    /// Image of `v⁺ b` in `V(N)^{⊗d}` under `v⁺ ↦ v_{(i, ..., i)}`.
    pub fn embed(&self, space: &TensorSpace, v: &BaseElt) -> Result<TensorElt> {
        let index = self.index.ok_or_else(|| Error::IllegalCombination("the regular module has no base index".into()))?;
        Ok(space.act_base(&space.vector(&vec![index; self.alg.d()]), v))
    }

    pub fn to_json(&self, v: &BaseElt) -> Value {
        let mut out = self.alg.base_to_json(v);
        out["index"] = match self.index {
            Some(i) => json!(i),
            None => json!("regular"),
        };
        out["specht"] = json!(match self.kind {
            SpechtKind::Triv => "triv",
            SpechtKind::Sgn => "sgn",
        });
        out
    }

    /// Reads `{"index": i | "regular", "specht": "triv" | "sgn", "terms": [...]}`.
    pub fn from_json(alg: &Algebra, v: &Value) -> Result<(WreathModule, BaseElt)> {
        let kind = match v.get("specht").and_then(Value::as_str) {
            Some("triv") => SpechtKind::Triv,
            Some("sgn") => SpechtKind::Sgn,
            other => return Err(Error::Malformed(format!("specht flag {other:?}"))),
        };
        let index = match v.get("index") {
            None => None,
            Some(Value::String(s)) if s == "regular" => None,
            Some(x) => Some(x.as_i64().ok_or_else(|| Error::Malformed(format!("index {x}")))?),
        };
        let mut body = v.clone();
        if let Some(obj) = body.as_object_mut() {
            obj.remove("index");
            obj.remove("specht");
        }
        Ok((WreathModule { alg: alg.clone(), kind, index }, alg.base_from_json(&body)?))
    }
}

// ---- finite Gelfand-Graev ----

/// Gauss sums `g_0, ..., g_{m-1}` with `g_0 = -1` and `g_k g_{-k} = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussFamily(pub Vec<Scalar>);

impl GaussFamily {
    /// `g_0 = -1`, `g_k = √q`.
    pub fn standard(alg: &Algebra) -> GaussFamily {
        let ring = alg.ring();
        let m = ring.m();
        GaussFamily((0..m).map(|k| if k == 0 { ring.int(-1) } else { ring.sqrt_q() }).collect())
    }

    /// `g_k = √q ζ^{r_k}` with `r_k + r_{-k} ≡ 0`.
    pub fn twisted(alg: &Algebra, exps: &[i64]) -> Result<GaussFamily> {
        let ring = alg.ring();
        let m = ring.m();
        if exps.len() != m {
            return Err(Error::Malformed("need one exponent per residue".into()));
        }
        let fam = GaussFamily(
            (0..m)
                .map(|k| if k == 0 { ring.int(-1) } else { ring.mul(&ring.sqrt_q(), &ring.root_of_unity(exps[k])) })
                .collect(),
        );
        fam.validate(alg)?;
        Ok(fam)
    }

    /// A random admissible family from a seed.
    pub fn seeded(alg: &Algebra, seed: u64) -> GaussFamily {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = alg.ring().m();
        let mut exps = vec![0i64; m];
        for k in 1..m {
            let neg = (m - k) % m;
            if k < neg {
                exps[k] = rng.gen_range(0..m as i64);
                exps[neg] = -exps[k];
            } else if k == neg {
                // self-paired residue: g_k^2 = q forces ζ^{2r} = 1
                exps[k] = if m % 2 == 0 && rng.gen_bool(0.5) { m as i64 / 2 } else { 0 };
            }
        }
        GaussFamily::twisted(alg, &exps).expect("constructed admissible")
    }

    pub fn validate(&self, alg: &Algebra) -> Result<()> {
        let ring = alg.ring();
        let m = ring.m();
        if self.0.len() != m {
            return Err(Error::Malformed(format!("Gauss family needs {m} entries")));
        }
        if self.0[0] != ring.int(-1) {
            return Err(Error::InvalidParams("g_0 must be -1".into()));
        }
        let q = ring.int(alg.params.q as i64);
        for k in 1..m {
            if ring.mul(&self.0[k], &self.0[(m - k) % m]) != q {
                return Err(Error::InvalidParams(format!("g_{k} g_-{k} != q")));
            }
        }
        Ok(())
    }

    pub fn get(&self, r: i64) -> &Scalar {
        &self.0[r.rem_euclid(self.0.len() as i64) as usize]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(alg: &Algebra, v: &Value) -> Result<GaussFamily> {
        let arr = v.as_array().ok_or_else(|| Error::Malformed("Gauss family must be an array".into()))?;
        let fam = GaussFamily(arr.iter().map(|c| alg.ring().parse_json(c)).collect::<Result<_>>()?);
        for s in &fam.0 {
            alg.ring().check(s)?;
        }
        fam.validate(alg)?;
        Ok(fam)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GgBasis {
    /// `c^g(χ^γ)`.
    Gauss,
    /// `c^q(χ^γ)`, rescaled so that `T_i` acts by `-1` or `√q`.
    Rescaled,
}

/// Element of the finite Gelfand-Graev module, keyed by characters `γ ∈ [m]^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGgElt {
    pub basis: GgBasis,
    pub terms: Lc<Vec<u16>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteGen<'a> {
    T(usize),
    Chi(&'a [u16]),
    Torus(&'a [i64]),
}

/// The finite Gelfand-Graev module over the Yokonuma-type Hecke algebra of rank `d`.
#[derive(Clone, Debug)]
pub struct FiniteGg {
    pub alg: Algebra,
    pub family: GaussFamily,
}

impl FiniteGg {
    pub fn new(alg: &Algebra, family: GaussFamily) -> Result<FiniteGg> {
        family.validate(alg)?;
        Ok(FiniteGg { alg: alg.clone(), family })
    }

    pub fn basis_vector(&self, basis: GgBasis, gamma: &[u16]) -> FiniteGgElt {
        FiniteGgElt { basis, terms: Lc::term(gamma.to_vec(), self.alg.ring().one()) }
    }

    /// `Π_{i<j, γ_i > γ_j} √q / g_{γ_i - γ_j}`.
    pub fn rescale_factor(&self, gamma: &[u16]) -> Result<Scalar> {
        let ring = self.alg.ring();
        let mut acc = ring.one();
        for i in 0..gamma.len() {
            for j in i + 1..gamma.len() {
                if gamma[i] > gamma[j] {
                    let g = self.family.get(gamma[i] as i64 - gamma[j] as i64);
                    acc = ring.mul(&acc, &ring.mul(&ring.sqrt_q(), &ring.invert_restricted(g)?));
                }
            }
        }
        Ok(acc)
    }

    pub fn change_basis(&self, v: &FiniteGgElt, to: GgBasis) -> Result<FiniteGgElt> {
        if v.basis == to {
            return Ok(v.clone());
        }
        let ring = self.alg.ring();
        let mut terms = Lc::zero();
        for (g, c) in v.terms.iter() {
            let r = self.rescale_factor(g)?;
            // c^q = r c^g
            let factor = match to {
                GgBasis::Gauss => r,
                GgBasis::Rescaled => ring.invert_restricted(&r)?,
            };
            terms.add_term(g.clone(), ring.mul(c, &factor));
        }
        Ok(FiniteGgElt { basis: to, terms })
    }

    pub fn act(&self, v: &FiniteGgElt, gen: FiniteGen) -> Result<FiniteGgElt> {
        let ring = self.alg.ring();
        let d = self.alg.d();
        let m = ring.m() as i64;
        match gen {
            FiniteGen::T(i) => {
                self.alg.check_index(i)?;
                let vg = self.change_basis(v, GgBasis::Gauss)?;
                let mut terms = Lc::zero();
                for (g, c) in vg.terms.iter() {
                    let mut sg = g.clone();
                    sg.swap(i - 1, i);
                    let gs = self.family.get(g[i - 1] as i64 - g[i] as i64);
                    terms.add_term(sg, ring.mul(c, gs));
                }
                self.change_basis(&FiniteGgElt { basis: GgBasis::Gauss, terms }, v.basis)
            }
            FiniteGen::Chi(delta) => {
                if delta.len() != d {
                    return Err(Error::Malformed("character of wrong rank".into()));
                }
                Ok(FiniteGgElt { basis: v.basis, terms: v.terms.retain(|g| g.as_slice() == delta) })
            }
            FiniteGen::Torus(a) => {
                if a.len() != d {
                    return Err(Error::Malformed("torus exponent of wrong rank".into()));
                }
                // t'_γ · t^a = u^{-γ·a} t'_γ
                let mut terms = Lc::zero();
                for (g, c) in v.terms.iter() {
                    let dot: i64 = g.iter().zip(a).map(|(&x, &y)| x as i64 * y).sum();
                    terms.add_term(g.clone(), ring.mul_root(c, -dot.rem_euclid(m)));
                }
                Ok(FiniteGgElt { basis: v.basis, terms })
            }
        }
    }
}

// ---- comparison maps ----

/// Key `(a, λ)` of `v'_{a,λ} = v⁺ (⊗ _{a_i}t') x^λ`.
pub type GgKey = (Vec<u16>, Vec<i32>);

/// Rewrites a vector of `V(1)^{⊗d}` in the basis `v'_{a,λ}`.
pub fn gg_dictionary(space: &TensorSpace, v: &TensorElt) -> Result<Lc<GgKey>> {
    if space.level != 1 || space.alg.base.step != 1 {
        return Err(Error::IllegalCombination("dictionary needs V(1) over the full algebra".into()));
    }
    let base = &space.alg.base;
    let mut out: Lc<GgKey> = Lc::zero();
    for (k, c) in v.iter() {
        let lam: Vec<i32> = k.f.iter().map(|&h| (h - 1) as i32).collect();
        let twist: i64 = lam.iter().zip(&k.t).map(|(&l, &a)| l as i64 * a as i64).sum::<i64>() * base.psi;
        let c = base.ring.mul_root(c, twist);
        let torus = Lc::term(BaseMono { t: k.t.clone(), x: vec![0; base.d] }, c);
        let table: TPrimeTable = base.to_tprime(&torus)?;
        for (a, ca) in table {
            out.add_term((a, lam.clone()), ca);
        }
    }
    Ok(out)
}

/// Inverse of [`gg_dictionary`].
pub fn gg_dictionary_inverse(space: &TensorSpace, v: &Lc<GgKey>) -> Result<TensorElt> {
    if space.level != 1 {
        return Err(Error::IllegalCombination("dictionary needs V(1)".into()));
    }
    let base = &space.alg.base;
    let mut out = TensorElt::zero();
    let start = space.vector(&vec![1; base.d]);
    for ((a, lam), c) in v.iter() {
        let g: Vec<i64> = a.iter().map(|&x| x as i64).collect();
        let b = base.mul(&base.c_chi(&g)?, &base.elt(&vec![0; base.d], lam));
        out.add_scaled(&base.ring, &space.act_base(&start, &b), c);
    }
    Ok(out)
}

/// Exponent `E(f)` of the normalisation `Ξ(v_f) = √q^{E(f)} v_f ε_I`.
///
/// Heights are reduced mod `N n̄` and written `h = h_0 + N l` with `h_0 ∈ [1, N]`. Each
/// position pair `i < j` with reduced heights `a = f(j) < b = f(i)` contributes `0` when
/// `l_a = l_b` and `1 + sgn(a_0 - b_0)` otherwise. For `n̄ = 1` every `l` vanishes.
pub fn descent_exponent(f: &[i64], fine_level: i64, coarse_level: i64) -> u32 {
    let parts: Vec<(i64, i64, i64)> = f
        .iter()
        .map(|&h| {
            let r = (h - 1).rem_euclid(coarse_level);
            (r, r % fine_level, r / fine_level)
        })
        .collect();
    let mut e = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let (b, a) = (parts[i], parts[j]);
            if b.0 > a.0 && a.2 != b.2 {
                e += 1 + (a.1 - b.1).signum();
            }
        }
    }
    e as u32
}

fn descent_factor(coarse: &TensorSpace, fine: &TensorSpace, f: &[i64]) -> Scalar {
    let ring = fine.alg.ring();
    ring.pow(&ring.sqrt_q(), descent_exponent(f, fine.level, coarse.level))
}

/// `Ξ: V(N n̄)^{⊗d} → V(N)^{⊗d} ε_I`, `v_f ↦ √q^{E(f)} v_f ε_I` (see [`descent_exponent`]).
pub fn iwahori_descent(coarse: &TensorSpace, fine: &TensorSpace, v: &TensorElt) -> Result<TensorElt> {
    check_descent_pair(coarse, fine)?;
    let fb = &fine.alg.base;
    let eps = fb.eps_i()?;
    let mut out = TensorElt::zero();
    for (k, c) in v.iter() {
        let c = fb.ring.mul(c, &descent_factor(coarse, fine, &k.f));
        out.add_scaled(&fb.ring, &fine.act_base(&fine.vector(&k.f), &eps), &c);
    }
    Ok(out)
}

/// Inverse of [`iwahori_descent`] on `V(N)^{⊗d} ε_I`.
pub fn iwahori_descent_inverse(coarse: &TensorSpace, fine: &TensorSpace, v: &TensorElt) -> Result<TensorElt> {
    check_descent_pair(coarse, fine)?;
    let fb = &fine.alg.base;
    let scale = fb.ring.int((fb.torus as i64).pow(fb.d as u32));
    let mut pre = TensorElt::zero();
    for (k, c) in v.iter() {
        if k.t.iter().all(|&a| a == 0) {
            let inv = fb.ring.invert_restricted(&descent_factor(coarse, fine, &k.f))?;
            pre.add_term(TensorMono { f: k.f.clone(), t: k.t.clone() }, fb.ring.mul(&fb.ring.mul(c, &scale), &inv));
        }
    }
    if iwahori_descent(coarse, fine, &pre)? != *v {
        return Err(Error::NotInSubspace("vector is not fixed by ε_I".into()));
    }
    Ok(pre)
}

fn check_descent_pair(coarse: &TensorSpace, fine: &TensorSpace) -> Result<()> {
    let nb = fine.alg.params.n_bar() as i64;
    if coarse.variant != KmsVariant::Sign || fine.variant != KmsVariant::Sign {
        return Err(Error::IllegalCombination("descent is defined between sign-variant KMS spaces".into()));
    }
    if coarse.alg.base.torus != 1 || coarse.alg.base.step as i64 != nb || coarse.level != fine.level * nb {
        return Err(Error::IllegalCombination("coarse space must be V(N n̄) over the coarse algebra".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Params;

    fn alg(q: u64, n: u64, k: u64, d: usize) -> Algebra {
        Algebra::from_params(&Params::new(q, n, k, d, 1).unwrap()).unwrap()
    }

    #[test]
    fn base_action_is_associative() {
        let a = alg(7, 3, 0, 2);
        let sp = TensorSpace::kms(&a, 2).unwrap();
        let v = sp.vector_t(&[1, 4], &[2, 5]);
        let b1 = a.base.elt(&[1, 3], &[1, -1]);
        let b2 = a.base.elt(&[4, 2], &[-2, 1]);
        assert_eq!(sp.act_base(&sp.act_base(&v, &b1), &b2), sp.act_base(&v, &a.base.mul(&b1, &b2)));
    }

    #[test]
    fn small_action_examples() {
        // N = 2: (v1 ⊗ v2) · H_1 = v2 ⊗ v1
        let a = alg(5, 1, 0, 2);
        let sp = TensorSpace::kms(&a, 2).unwrap();
        assert_eq!(sp.act_h(&sp.vector(&[1, 2]), 1), sp.vector(&[2, 1]));
        // N = 1 with the sign convention: (v1 ⊗ v1) · H_1 = -(v1 ⊗ v1) γ_1
        let sp1 = TensorSpace::kms(&a, 1).unwrap();
        let v = sp1.vector(&[1, 1]);
        assert_eq!(sp1.act_h(&v, 1), sp1.act_base(&v, &a.gamma(1)).neg());
        let tr = TensorSpace::new(&a, 1, KmsVariant::Trivial).unwrap();
        assert_eq!(tr.act_h(&v, 1), tr.act_base(&v, &a.gamma_bar(1)));
    }

    #[test]
    fn membership() {
        assert_eq!(mlambda_membership(&[1, 5, 2], 2), Composition::new(&[2, 1]));
        assert_eq!(mlambda_membership(&[0, -1], 2), Composition::new(&[1, 1]));
    }

    #[test]
    fn gauss_families() {
        let a = alg(13, 2, 0, 2);
        let std = GaussFamily::standard(&a);
        assert!(std.validate(&a).is_ok());
        for seed in 0..5 {
            assert!(GaussFamily::seeded(&a, seed).validate(&a).is_ok());
        }
        let mut bad = std.clone();
        bad.0[1] = a.ring().int(2);
        assert!(bad.validate(&a).is_err());
    }
}
