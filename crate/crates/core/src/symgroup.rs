//! Permutations, Young subgroups, minimal coset representatives and the
//! matrix parametrization of double cosets.
//!
//! Permutations act on `{1..d}`; `s_i` swaps `i` and `i + 1`, and products compose as
//! functions, `(uv)(j) = u(v(j))`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(d: usize) -> Perm {
        Perm((0..d as u8).collect())
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Result<Perm> {
        let d = v.len();
        let mut seen = vec![false; d];
        for &x in v {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::Malformed(format!("{v:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(v.iter().map(|&x| (x - 1) as u8).collect()))
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `w(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1] as usize + 1
    }

    pub fn simple(d: usize, i: usize) -> Result<Perm> {
        Perm::identity(d).mul_simple_right(i)
    }

    /// Product `s_{i_1} ... s_{i_r}`.
    pub fn from_word(d: usize, word: &[usize]) -> Result<Perm> {
        let mut w = Perm::identity(d);
        for &i in word {
            w = w.mul_simple_right(i)?;
        }
        Ok(w)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.degree() {
            return Err(Error::OutOfRange(format!("s_{i} in degree {}", self.degree())));
        }
        Ok(())
    }

    /// `w s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Result<Perm> {
        self.check_index(i)?;
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Ok(Perm(v))
    }

    /// `s_i w`.
    pub fn mul_simple_left(&self, i: usize) -> Result<Perm> {
        self.check_index(i)?;
        let a = (i - 1) as u8;
        let b = i as u8;
        Ok(Perm(self.0.iter().map(|&x| if x == a { b } else if x == b { a } else { x }).collect()))
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.degree()];
        for (j, &x) in self.0.iter().enumerate() {
            v[x as usize] = j as u8;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &x)| j == x as usize)
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut l = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.degree()).filter(|&i| self.has_right_descent(i)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// Canonical reduced word: repeatedly strip the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&i) = w.left_descents().first() {
            word.push(i);
            w = w.mul_simple_left(i).expect("descent index in range");
        }
        word
    }

    /// Entry-moving place action on vectors: the entry at position `j` moves to `w(j)`.
    pub fn act_on<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (j, x) in v.iter().enumerate() {
            out[self.0[j] as usize] = x.clone();
        }
        out
    }

    /// Composition of vectors with the permutation: `j ↦ v[w(j)]`.
    pub fn precompose<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&x| v[x as usize].clone()).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for x in self.one_line() {
            write!(f, "{x}")?;
            if self.degree() > 9 {
                write!(f, " ")?;
            }
        }
        write!(f, "|")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = w.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// All permutations of degree `d` in lexicographic one-line order.
pub fn all_perms(d: usize) -> Vec<Perm> {
    fn rec(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(Perm(cur.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x as u8);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// A weak composition; zero parts are allowed and give empty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn new(parts: &[usize]) -> Composition {
        Composition(parts.to_vec())
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Half-open 1-based ranges `[start, end)` of the blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 1;
        self.0
            .iter()
            .map(|&p| {
                let r = start..start + p;
                start += p;
                r
            })
            .collect()
    }

    /// Block index of a 1-based position.
    pub fn block_of(&self, j: usize) -> usize {
        let mut acc = 0;
        for (b, &p) in self.0.iter().enumerate() {
            acc += p;
            if j <= acc {
                return b;
            }
        }
        panic!("position {j} outside composition {:?}", self.0)
    }

    /// Indices `i` with `s_i` in the Young subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let d = self.size();
        (1..d).filter(|&i| self.block_of(i) == self.block_of(i + 1)).collect()
    }

    /// Longest element of the Young subgroup: reverses every block.
    pub fn longest(&self) -> Perm {
        let mut v = Vec::with_capacity(self.size());
        for r in self.blocks() {
            for j in r.clone() {
                v.push((r.start + r.end - 1 - j - 1) as u8);
            }
        }
        Perm(v)
    }

    pub fn contains(&self, w: &Perm) -> bool {
        (1..=w.degree()).all(|j| self.block_of(w.apply(j)) == self.block_of(j))
    }

    /// All elements of the Young subgroup.
    pub fn subgroup(&self) -> Vec<Perm> {
        all_perms(self.size()).into_iter().filter(|w| self.contains(w)).collect()
    }
}

fn sort_perms(mut v: Vec<Perm>) -> Vec<Perm> {
    v.sort_by_key(|w| (w.length(), w.clone()));
    v
}

/// Minimal length representatives of `Σ_λ \ Σ_d` (no left descent in `Σ_λ`).
pub fn min_left_coset_reps(lambda: &Composition) -> Vec<Perm> {
    let gens = lambda.generators();
    sort_perms(
        all_perms(lambda.size())
            .into_iter()
            .filter(|w| gens.iter().all(|&i| !w.has_left_descent(i)))
            .collect(),
    )
}

/// Minimal length representatives of `Σ_d / Σ_μ` (no right descent in `Σ_μ`).
pub fn min_right_coset_reps(mu: &Composition) -> Vec<Perm> {
    let gens = mu.generators();
    sort_perms(
        all_perms(mu.size())
            .into_iter()
            .filter(|w| gens.iter().all(|&i| !w.has_right_descent(i)))
            .collect(),
    )
}

/// Minimal length representatives of `Σ_λ \ Σ_d / Σ_μ`.
pub fn min_double_coset_reps(lambda: &Composition, mu: &Composition) -> Vec<Perm> {
    let gl = lambda.generators();
    let gm = mu.generators();
    sort_perms(
        all_perms(lambda.size())
            .into_iter()
            .filter(|w| gl.iter().all(|&i| !w.has_left_descent(i)) && gm.iter().all(|&i| !w.has_right_descent(i)))
            .collect(),
    )
}

/// Minimal length representatives of `Σ_δ \ Σ_μ` for `Σ_δ ⊆ Σ_μ`.
pub fn min_left_reps_within(delta: &Composition, mu: &Composition) -> Vec<Perm> {
    let gd = delta.generators();
    sort_perms(
        mu.subgroup()
            .into_iter()
            .filter(|w| gd.iter().all(|&i| !w.has_left_descent(i)))
            .collect(),
    )
}

/// Factors `w = u · η` with `u ∈ Σ_λ` and `η` the minimal representative of `Σ_λ w`.
pub fn factor_left(w: &Perm, lambda: &Composition) -> (Perm, Perm) {
    let gens = lambda.generators();
    let mut eta = w.clone();
    let mut u = Perm::identity(w.degree());
    while let Some(&i) = gens.iter().find(|&&i| eta.has_left_descent(i)) {
        eta = eta.mul_simple_left(i).expect("generator in range");
        u = u.mul_simple_right(i).expect("generator in range");
    }
    (u, eta)
}

/// Minimal representative of the double coset `Σ_λ w Σ_μ`.
pub fn double_coset_min(w: &Perm, lambda: &Composition, mu: &Composition) -> Perm {
    let gl = lambda.generators();
    let gm = mu.generators();
    let mut w = w.clone();
    loop {
        if let Some(&i) = gl.iter().find(|&&i| w.has_left_descent(i)) {
            w = w.mul_simple_left(i).expect("in range");
        } else if let Some(&i) = gm.iter().find(|&&i| w.has_right_descent(i)) {
            w = w.mul_simple_right(i).expect("in range");
        } else {
            return w;
        }
    }
}

/// Data attached to a matrix `A` with nonnegative integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Row sums.
    pub lambda: Composition,
    /// Column sums.
    pub mu: Composition,
    /// Minimal double coset representative.
    pub g: Perm,
    /// Column reading of the entries: `Σ_δ = g^{-1} Σ_λ g ∩ Σ_μ`.
    pub delta: Composition,
}

pub type Matrix = Vec<Vec<usize>>;

pub fn matrix_to_triple(a: &Matrix) -> Result<DoubleCoset> {
    let rows = a.len();
    if rows == 0 || a.iter().any(|r| r.len() != a[0].len()) {
        return Err(Error::Malformed("matrix must be rectangular and nonempty".into()));
    }
    let cols = a[0].len();
    let lambda = Composition((0..rows).map(|i| a[i].iter().sum()).collect());
    let mu = Composition((0..cols).map(|j| (0..rows).map(|i| a[i][j]).sum()).collect());
    let d = lambda.size();
    let lblocks = lambda.blocks();
    let mut next: Vec<usize> = lblocks.iter().map(|r| r.start).collect();
    let mut g = vec![0u8; d];
    let mut pos = 1;
    let mut delta = Vec::new();
    for j in 0..cols {
        for i in 0..rows {
            for _ in 0..a[i][j] {
                g[pos - 1] = (next[i] - 1) as u8;
                next[i] += 1;
                pos += 1;
            }
            if a[i][j] > 0 {
                delta.push(a[i][j]);
            }
        }
    }
    Ok(DoubleCoset { lambda, mu, g: Perm(g), delta: Composition(delta) })
}

/// `a_ij = |Z_i^λ ∩ g Z_j^μ|`.
pub fn triple_to_matrix(lambda: &Composition, g: &Perm, mu: &Composition) -> Result<Matrix> {
    if lambda.size() != mu.size() || g.degree() != mu.size() {
        return Err(Error::Malformed("sizes of λ, g, μ disagree".into()));
    }
    let mut a = vec![vec![0usize; mu.0.len()]; lambda.0.len()];
    for j in 1..=g.degree() {
        a[lambda.block_of(g.apply(j))][mu.block_of(j)] += 1;
    }
    Ok(a)
}

impl DoubleCoset {
    pub fn longest_lambda(&self) -> Perm {
        self.lambda.longest()
    }

    /// `w_◦^δ w_◦^μ`, the longest element of `^δΣ_μ`.
    pub fn longest_prime(&self) -> Perm {
        self.delta.longest().compose(&self.mu.longest())
    }

    /// `w_◦^λ g w'_◦`, the longest element of `Σ_λ g Σ_μ`.
    pub fn longest_a(&self) -> Perm {
        self.lambda.longest().compose(&self.g).compose(&self.longest_prime())
    }

    /// `^δΣ_μ`.
    pub fn delta_reps(&self) -> Vec<Perm> {
        min_left_reps_within(&self.delta, &self.mu)
    }
}

/// All `rows × cols` matrices with nonnegative entries summing to `d`.
pub fn enumerate_matrices(rows: usize, cols: usize, d: usize) -> Vec<Matrix> {
    fn rec(cells: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == cells {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(cells, left - v, cur, out);
            cur.pop();
        }
    }
    let mut flat = Vec::new();
    rec(rows * cols, d, &mut Vec::new(), &mut flat);
    flat.into_iter().map(|f| f.chunks(cols).map(<[usize]>::to_vec).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: usize, word: &[usize]) -> Perm {
        Perm::from_word(d, word).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn one_line_and_words() {
        assert_eq!(w(4, &[2, 3]).one_line(), vec![1, 3, 4, 2]);
        assert_eq!(w(4, &[2, 3]).reduced_word(), vec![2, 3]);
        for p in all_perms(4) {
            let word = p.reduced_word();
            assert_eq!(word.len(), p.length());
            assert_eq!(Perm::from_word(4, &word).unwrap(), p);
        }
    }

    #[test]
    fn reduced_word_is_lex_smallest() {
        // brute force over all reduced words of every element of Σ_4
        fn words(p: &Perm) -> Vec<Vec<usize>> {
            if p.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in p.left_descents() {
                for mut rest in words(&p.mul_simple_left(i).unwrap()) {
                    rest.insert(0, i);
                    out.push(rest);
                }
            }
            out
        }
        for p in all_perms(4) {
            let min = words(&p).into_iter().min().unwrap();
            assert_eq!(p.reduced_word(), min);
        }
    }

    #[test]
    fn group_laws() {
        let ps = all_perms(4);
        assert_eq!(ps.len(), 24);
        for a in &ps {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in ps.iter().step_by(5) {
                let ab = a.compose(b);
                // act_on is a left action
                let v: Vec<usize> = (10..14).collect();
                assert_eq!(ab.act_on(&v), a.act_on(&b.act_on(&v)));
            }
        }
    }

    #[test]
    fn left_coset_reps_of_22() {
        let lam = Composition::new(&[2, 2]);
        let got: Vec<Perm> = min_left_coset_reps(&lam);
        let want: Vec<Perm> =
            vec![w(4, &[]), w(4, &[2]), w(4, &[2, 1]), w(4, &[2, 3]), w(4, &[2, 1, 3]), w(4, &[2, 3, 1, 2])];
        let mut a = got.clone();
        a.sort();
        let mut b = want;
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_reps_example() {
        let got = min_left_reps_within(&Composition::new(&[1, 2, 1]), &Composition::new(&[3, 1]));
        assert_eq!(got, vec![w(4, &[]), w(4, &[1]), w(4, &[1, 2])]);
    }

    #[test]
    fn matrix_example() {
        let dc = matrix_to_triple(&vec![vec![1, 1], vec![2, 0]]).unwrap();
        assert_eq!(dc.lambda, Composition::new(&[2, 2]));
        assert_eq!(dc.mu, Composition::new(&[3, 1]));
        assert_eq!(dc.g.one_line(), vec![1, 3, 4, 2]);
        assert_eq!(dc.g, w(4, &[2, 3]));
        assert_eq!(dc.delta, Composition::new(&[1, 2, 1]));
        assert_eq!(dc.longest_prime(), w(4, &[1, 2]));
        assert_eq!(dc.longest_a(), w(4, &[1, 3, 2, 3, 1, 2]));
        assert_eq!(triple_to_matrix(&dc.lambda, &dc.g, &dc.mu).unwrap(), vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn double_cosets_match_matrices() {
        for d in 1..=4 {
            for a in enumerate_matrices(2, 2, d) {
                let dc = matrix_to_triple(&a).unwrap();
                let reps = min_double_coset_reps(&dc.lambda, &dc.mu);
                assert!(reps.contains(&dc.g), "{a:?}");
                assert_eq!(triple_to_matrix(&dc.lambda, &dc.g, &dc.mu).unwrap(), a);
                // the longest element is the unique maximum of the double coset
                let coset: Vec<Perm> = all_perms(d)
                    .into_iter()
                    .filter(|x| double_coset_min(x, &dc.lambda, &dc.mu) == dc.g)
                    .collect();
                let top = coset.iter().max_by_key(|x| x.length()).unwrap();
                assert_eq!(*top, dc.longest_a());
                assert_eq!(coset.iter().filter(|x| x.length() == top.length()).count(), 1);
                // Σ_δ = g^{-1} Σ_λ g ∩ Σ_μ
                let conj: Vec<Perm> = dc
                    .mu
                    .subgroup()
                    .into_iter()
                    .filter(|x| dc.lambda.contains(&dc.g.compose(x).compose(&dc.g.inverse())))
                    .collect();
                let mut sd = dc.delta.subgroup();
                sd.sort();
                let mut conj = conj;
                conj.sort();
                assert_eq!(sd, conj);
            }
        }
    }

    #[test]
    fn coset_counts() {
        let lam = Composition::new(&[2, 1, 1]);
        assert_eq!(min_left_coset_reps(&lam).len(), factorial(4) / 2);
        assert_eq!(min_right_coset_reps(&lam).len(), factorial(4) / 2);
        for x in all_perms(4) {
            let (u, eta) = factor_left(&x, &lam);
            assert!(lam.contains(&u));
            assert_eq!(u.compose(&eta), x);
            assert_eq!(u.length() + eta.length(), x.length());
        }
    }

    #[test]
    fn matrix_enumeration() {
        // number of 2×2 matrices summing to d is C(d+3, 3)
        for d in 0..5 {
            let n = enumerate_matrices(2, 2, d).len();
            assert_eq!(n, (d + 1) * (d + 2) * (d + 3) / 6);
        }
    }
}
