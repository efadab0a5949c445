//! The orthosymplectic Lie superalgebra osp(1|2n) inside gl(1|2n).
//!
//! The algebra is built once from the block matrix realization and frozen:
//! ordered basis, bracket table, invariant form, root data, the good grading
//! adapted to the principal nilpotent, the character χ = (f|·) and the Weyl
//! vector ρ. All downstream modules work against the tables; the matrix
//! realization is only used here.
//!
//! Conventions fixed by this module (the literature leaves root-vector
//! scales open):
//! * index set {0, ±1, …, ±n}; index 0 spans the 1-dimensional even block,
//!   ±i the symplectic block, and e(a,b) is odd iff exactly one of a, b is 0;
//! * u(ε_i) = e(i,0) − e(0,−i), u(−ε_i) = e(−i,0) + e(0,i),
//!   u(ε_i−ε_j) = e(i,j) − e(−j,−i), u(ε_i+ε_j) = e(i,−j) + e(j,−i),
//!   u(−ε_i−ε_j) = e(−i,j) + e(−j,i), u(2ε_i) = e(i,−i), u(−2ε_i) = e(−i,i)
//!   except u(−2ε_n) = −e(−n,n);
//! * the sign on u(−2ε_n) makes χ([u(ε_n), u(ε_n)]) = 2 hold over ℚ, which
//!   normalizes the Φ generator to Φ² = 1.
//!
//! Basis order: u(−α) for α ∈ Δ₊ by (height, lex), then h_1…h_n, then
//! u(ε_n), then the remaining positive root vectors by (height, lex). With
//! this order PBW normal forms put the degree-≥1 part rightmost, so the
//! Whittaker reduction is a rightmost substitution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{frac, in_span, rat, Rat, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Root of osp(1|2n) in ε-coordinates. Odd roots are exactly ±ε_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Root {
    pub eps: Vec<i64>,
}

impl Root {
    pub fn parity(&self) -> Parity {
        let ones = self
            .eps
            .iter()
            .filter(|&&c| c.abs() == 1)
            .count();
        let support = self.eps.iter().filter(|&&c| c != 0).count();
        if support == 1 && ones == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn negate(&self) -> Root {
        Root {
            eps: self.eps.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self.eps.iter().find(|&&c| c != 0) {
            Some(&c) => c > 0,
            None => false,
        }
    }

    /// Coefficients over the simple roots α_1, …, α_n.
    pub fn simple_coords(&self) -> Vec<i64> {
        let n = self.eps.len();
        (0..n)
            .map(|j| self.eps.iter().take(j + 1).sum())
            .collect()
    }

    /// Height = sum of simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.simple_coords().iter().sum()
    }

    /// Doubled good-grading degree: weights 1 on α_1…α_{n−1}, ½ on α_n.
    pub fn degree2(&self) -> i64 {
        let c = self.simple_coords();
        let n = c.len();
        2 * c[..n - 1].iter().sum::<i64>() + c[n - 1]
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.eps.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            if c == -1 {
                write!(f, "-")?;
            } else if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Weight λ ∈ h* in ε-coordinates. λ(h_i) is the i-th coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub eps: Vec<Rat>,
}

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight {
            eps: vec![Rat::zero(); n],
        }
    }

    pub fn from_root(r: &Root) -> Weight {
        Weight {
            eps: r.eps.iter().map(|&c| rat(c)).collect(),
        }
    }

    /// The form on h* induced by (·|·); (ε_i|ε_j) = δ_ij / 2.
    pub fn form(&self, other: &Weight) -> Rat {
        let mut acc = Rat::zero();
        for (a, b) in self.eps.iter().zip(&other.eps) {
            acc += a * b;
        }
        acc / rat(2)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// One entry of the fixed ordered basis.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub name: String,
    /// None for Cartan elements.
    pub root: Option<Root>,
    pub parity: Parity,
    /// ad(h)-weight in ε-coordinates (zero vector for Cartans).
    pub weight: Vec<i64>,
    /// Doubled good-grading degree.
    pub degree2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OspError {
    /// build_osp requires n ≥ 1.
    InvalidRank(usize),
    /// An operation required parity-homogeneous input.
    MixedParity,
}

impl fmt::Display for OspError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OspError::InvalidRank(n) => write!(f, "osp(1|2n) needs n >= 1, got n = {n}"),
            OspError::MixedParity => write!(f, "operand is not parity-homogeneous"),
        }
    }
}

/// Element of osp(1|2n): exact coordinates over the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    coords: BTreeMap<usize, Rat>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn basis(index: usize) -> LieElement {
        let mut coords = BTreeMap::new();
        coords.insert(index, Rat::one());
        LieElement { coords }
    }

    pub fn from_coords(coords: BTreeMap<usize, Rat>) -> LieElement {
        let coords = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        LieElement { coords }
    }

    pub fn coords(&self) -> &BTreeMap<usize, Rat> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, index: usize, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coords.entry(index).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coords.remove(&index);
        }
    }

    pub fn scaled(&self, c: &Rat) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            coords: self.coords.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (k, v) in &other.coords {
            out.add_term(*k, v.clone());
        }
        out
    }

    /// Parity of the support, None if mixed.
    pub fn parity(&self, alg: &Algebra) -> Option<Parity> {
        let mut p = None;
        for k in self.coords.keys() {
            let q = alg.basis[*k].parity;
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(Parity::Even))
    }

    /// Doubled good-grading degree of the support, None if mixed.
    pub fn degree2(&self, alg: &Algebra) -> Option<i64> {
        let mut d = None;
        for k in self.coords.keys() {
            let e = alg.basis[*k].degree2;
            match d {
                None => d = Some(e),
                Some(prev) if prev != e => return None,
                _ => {}
            }
        }
        d
    }
}

/// Frozen algebra datum for osp(1|2n): ordered basis plus bracket, form,
/// grading and character tables. Immutable after construction; safe to share
/// across threads.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub n: usize,
    pub basis: Vec<BasisElement>,
    bracket_table: Vec<Vec<Vec<(usize, Rat)>>>,
    form_table: Vec<Vec<Rat>>,
    chi_table: Vec<Rat>,
    f_prin: LieElement,
    neg_count: usize,
}

impl Algebra {
    /// Construct osp(1|2n), its tables and the good grading for f_prin.
    pub fn build(n: usize) -> Result<Algebra, OspError> {
        if n < 1 {
            return Err(OspError::InvalidRank(n));
        }

        // Positive roots sorted by (height, lex); Δ₊ = {ε_i, 2ε_i} ∪ {ε_i∓ε_j}.
        let mut positive: Vec<Root> = Vec::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            positive.push(Root { eps: e.clone() });
            e[i] = 2;
            positive.push(Root { eps: e });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let mut d = vec![0i64; n];
                d[i] = 1;
                d[j] = -1;
                positive.push(Root { eps: d });
                let mut s = vec![0i64; n];
                s[i] = 1;
                s[j] = 1;
                positive.push(Root { eps: s });
            }
        }
        positive.sort_by_key(|r| (r.height(), r.eps.clone()));

        let alpha_n = Root {
            eps: {
                let mut e = vec![0i64; n];
                e[n - 1] = 1;
                e
            },
        };

        // Ordered basis: negatives, Cartans, u(α_n), remaining positives.
        let mut layout: Vec<BasisSlot> = Vec::new();
        for r in &positive {
            layout.push(BasisSlot::Root(r.negate()));
        }
        for i in 0..n {
            layout.push(BasisSlot::Cartan(i));
        }
        layout.push(BasisSlot::Root(alpha_n.clone()));
        for r in &positive {
            if *r != alpha_n {
                layout.push(BasisSlot::Root(r.clone()));
            }
        }

        let matrices: Vec<GlMatrix> = layout.iter().map(|s| realize(s, n)).collect();
        let basis: Vec<BasisElement> = layout
            .iter()
            .zip(&matrices)
            .map(|(slot, m)| describe(slot, m, n))
            .collect();

        // Coordinates of a gl matrix over the osp basis, via one exact solve.
        // The solve doubles as the closure check.
        let flat: Vec<Vec<Rat>> = matrices.iter().map(|m| m.flatten(n)).collect();
        let to_coords = |m: &GlMatrix| -> Vec<(usize, Rat)> {
            let target = m.flatten(n);
            let sol = in_span(&target, &flat)
                .expect("flattened dimensions agree")
                .expect("bracket left osp(1|2n): realization is not closed");
            sol.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };

        let dim = basis.len();
        let mut bracket_table = vec![vec![Vec::new(); dim]; dim];
        let mut form_table = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let br = matrices[i].supercommutator(&matrices[j], basis[i].parity, basis[j].parity);
                bracket_table[i][j] = to_coords(&br);
                form_table[i][j] = matrices[i].form(&matrices[j]);
            }
        }

        // f_prin = Σ_{i<n} u(−α_i) + u(−2α_n); all its summands are basis
        // vectors, so its coordinates are unit entries.
        let mut f_prin = LieElement::zero();
        for i in 0..n - 1 {
            let mut e = vec![0i64; n];
            e[i] = -1;
            e[i + 1] = 1;
            let idx = basis
                .iter()
                .position(|b| b.root.as_ref() == Some(&Root { eps: e.clone() }))
                .expect("negative simple root vector present");
            f_prin.add_term(idx, Rat::one());
        }
        let minus_2an = Root {
            eps: {
                let mut e = vec![0i64; n];
                e[n - 1] = -2;
                e
            },
        };
        let idx = basis
            .iter()
            .position(|b| b.root.as_ref() == Some(&minus_2an))
            .expect("u(-2e_n) present");
        f_prin.add_term(idx, Rat::one());

        let f_matrix = f_prin
            .coords()
            .iter()
            .fold(GlMatrix::zero(), |acc, (k, c)| {
                acc.plus(&matrices[*k].scaled(c))
            });
        let chi_table: Vec<Rat> = matrices.iter().map(|m| f_matrix.form(m)).collect();

        Ok(Algebra {
            n,
            basis,
            bracket_table,
            form_table,
            chi_table,
            f_prin,
            neg_count: positive.len(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of h_i (1-based i).
    pub fn cartan(&self, i: usize) -> usize {
        debug_assert!(1 <= i && i <= self.n);
        self.neg_count + (i - 1)
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        idx >= self.neg_count && idx < self.neg_count + self.n
    }

    /// Index of u(α_n) = u(ε_n), the basis vector of g_{1/2}.
    pub fn alpha_n(&self) -> usize {
        self.neg_count + self.n
    }

    /// Basis indices spanning g_{≥1} (the positive part beyond u(α_n)).
    pub fn g_ge1(&self) -> impl Iterator<Item = usize> {
        (self.alpha_n() + 1)..self.dim()
    }

    /// Basis indices spanning g_{>0}.
    pub fn g_pos(&self) -> impl Iterator<Item = usize> {
        self.alpha_n()..self.dim()
    }

    pub fn parity(&self, idx: usize) -> Parity {
        self.basis[idx].parity
    }

    /// [b_i, b_j] in basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.bracket_table[i][j]
    }

    /// Super bracket of parity-homogeneous elements.
    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement, OspError> {
        let (Some(_), Some(_)) = (u.parity(self), v.parity(self)) else {
            return Err(OspError::MixedParity);
        };
        let mut out = LieElement::zero();
        for (i, a) in u.coords() {
            for (j, b) in v.coords() {
                let c = a * b;
                for (k, s) in &self.bracket_table[*i][*j] {
                    out.add_term(*k, s * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn form_basis(&self, i: usize, j: usize) -> &Rat {
        &self.form_table[i][j]
    }

    /// Normalized invariant form (u|v) = −str(uv).
    pub fn form(&self, u: &LieElement, v: &LieElement) -> Rat {
        let mut acc = Rat::zero();
        for (i, a) in u.coords() {
            for (j, b) in v.coords() {
                acc += a * b * &self.form_table[*i][*j];
            }
        }
        acc
    }

    /// The good grading as doubled degrees per basis index.
    pub fn good_grading(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.degree2).collect()
    }

    pub fn degree2(&self, idx: usize) -> i64 {
        self.basis[idx].degree2
    }

    /// f_prin = Σ_{i<n} u(−α_i) + u(−2α_n).
    pub fn principal_nilpotent(&self) -> &LieElement {
        &self.f_prin
    }

    pub fn chi_basis(&self, idx: usize) -> &Rat {
        &self.chi_table[idx]
    }

    /// χ(u) = (f_prin | u).
    pub fn chi(&self, u: &LieElement) -> Rat {
        let mut acc = Rat::zero();
        for (i, a) in u.coords() {
            acc += a * &self.chi_table[*i];
        }
        acc
    }

    /// ρ_osp = ½ Σ_{α∈Δ₊} (−1)^{p(α)} α; ρ(h_i) = n − i + ½.
    pub fn rho(&self) -> Weight {
        Weight {
            eps: (1..=self.n)
                .map(|i| frac(2 * (self.n as i64 - i as i64) + 1, 2))
                .collect(),
        }
    }

    /// Positive roots in basis order of their root vectors.
    pub fn positive_roots(&self) -> Vec<Root> {
        self.basis
            .iter()
            .filter_map(|b| b.root.clone())
            .filter(Root::is_positive)
            .collect()
    }

    pub fn odd_positive_roots(&self) -> Vec<Root> {
        self.positive_roots()
            .into_iter()
            .filter(|r| r.parity().is_odd())
            .collect()
    }

    /// Basis indices of the degree slice g_j, j given doubled.
    pub fn degree_slice(&self, degree2: i64) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].degree2 == degree2)
            .collect()
    }

    /// All doubled degrees present in the grading.
    pub fn degrees2(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis.iter().map(|b| b.degree2).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

enum BasisSlot {
    Cartan(usize),
    Root(Root),
}

/// Root vectors of the block realization; see the module docs for the table.
fn realize(slot: &BasisSlot, n: usize) -> GlMatrix {
    let one = Rat::one();
    match slot {
        BasisSlot::Cartan(i) => {
            let i = (*i + 1) as i64;
            GlMatrix::from_entries(&[((i, i), one.clone()), ((-i, -i), -one)])
        }
        BasisSlot::Root(r) => {
            let nz: Vec<(usize, i64)> = r
                .eps
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect();
            match nz.as_slice() {
                // ±ε_i (odd)
                [(i, 1)] => {
                    let i = (*i + 1) as i64;
                    GlMatrix::from_entries(&[((i, 0), one.clone()), ((0, -i), -one)])
                }
                [(i, -1)] => {
                    let i = (*i + 1) as i64;
                    GlMatrix::from_entries(&[((-i, 0), one.clone()), ((0, i), one)])
                }
                // ±2ε_i, with the sign flip on u(−2ε_n)
                [(i, 2)] => {
                    let i = (*i + 1) as i64;
                    GlMatrix::from_entries(&[((i, -i), one)])
                }
                [(i, -2)] => {
                    let flip = *i == n - 1;
                    let i = (*i + 1) as i64;
                    GlMatrix::from_entries(&[((-i, i), if flip { -one } else { one })])
                }
                // ε_i − ε_j (either sign pattern)
                [(i, 1), (j, -1)] => {
                    let (a, b) = ((*i + 1) as i64, (*j + 1) as i64);
                    GlMatrix::from_entries(&[((a, b), one.clone()), ((-b, -a), -one)])
                }
                [(i, -1), (j, 1)] => {
                    let (a, b) = ((*j + 1) as i64, (*i + 1) as i64);
                    GlMatrix::from_entries(&[((a, b), one.clone()), ((-b, -a), -one)])
                }
                // ±(ε_i + ε_j)
                [(i, 1), (j, 1)] => {
                    let (a, b) = ((*i + 1) as i64, (*j + 1) as i64);
                    GlMatrix::from_entries(&[((a, -b), one.clone()), ((b, -a), one)])
                }
                [(i, -1), (j, -1)] => {
                    let (a, b) = ((*i + 1) as i64, (*j + 1) as i64);
                    GlMatrix::from_entries(&[((-a, b), one.clone()), ((-b, a), one)])
                }
                _ => unreachable!("not an osp(1|2n) root: {:?}", r),
            }
        }
    }
}

fn describe(slot: &BasisSlot, m: &GlMatrix, _n: usize) -> BasisElement {
    match slot {
        BasisSlot::Cartan(i) => BasisElement {
            name: format!("h{}", i + 1),
            root: None,
            parity: Parity::Even,
            weight: vec![0; _n],
            degree2: 0,
        },
        BasisSlot::Root(r) => BasisElement {
            name: format!("u({r})"),
            root: Some(r.clone()),
            parity: m.parity().expect("root vectors are parity-homogeneous"),
            weight: r.eps.clone(),
            degree2: r.degree2(),
        },
    }
}

/// Sparse matrix in gl(1|2n), keyed by signed block indices.
#[derive(Debug, Clone, Default)]
struct GlMatrix {
    entries: BTreeMap<(i64, i64), Rat>,
}

impl GlMatrix {
    fn zero() -> GlMatrix {
        GlMatrix::default()
    }

    fn from_entries(list: &[((i64, i64), Rat)]) -> GlMatrix {
        let mut m = GlMatrix::zero();
        for ((a, b), v) in list {
            m.add(*a, *b, v.clone());
        }
        m
    }

    fn add(&mut self, a: i64, b: i64, v: Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((a, b)).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(a, b));
        }
    }

    fn scaled(&self, c: &Rat) -> GlMatrix {
        if c.is_zero() {
            return GlMatrix::zero();
        }
        GlMatrix {
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn plus(&self, other: &GlMatrix) -> GlMatrix {
        let mut out = self.clone();
        for ((a, b), v) in &other.entries {
            out.add(*a, *b, v.clone());
        }
        out
    }

    fn mul(&self, other: &GlMatrix) -> GlMatrix {
        let mut out = GlMatrix::zero();
        for ((a, b), v) in &self.entries {
            for ((c, d), w) in &other.entries {
                if b == c {
                    out.add(*a, *d, v * w);
                }
            }
        }
        out
    }

    /// uv − (−1)^{p(u)p(v)} vu.
    fn supercommutator(&self, other: &GlMatrix, pu: Parity, pv: Parity) -> GlMatrix {
        let uv = self.mul(other);
        let vu = other.mul(self);
        if pu.is_odd() && pv.is_odd() {
            uv.plus(&vu)
        } else {
            uv.plus(&vu.scaled(&-Rat::one()))
        }
    }

    /// str(M) = M_00 − Σ_{k≠0} M_kk (index 0 is the even block).
    fn supertrace(&self) -> Rat {
        let mut acc = Rat::zero();
        for ((a, b), v) in &self.entries {
            if a == b {
                if *a == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        acc
    }

    /// (u|v) = −str(uv).
    fn form(&self, other: &GlMatrix) -> Rat {
        -self.mul(other).supertrace()
    }

    /// Parity from entry positions; None if mixed.
    fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for (a, b) in self.entries.keys() {
            let q = if (*a == 0) != (*b == 0) {
                Parity::Odd
            } else {
                Parity::Even
            };
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(Parity::Even))
    }

    /// Coordinates over all (2n+1)² entry positions, for span arithmetic.
    fn flatten(&self, n: usize) -> Vec<Rat> {
        let side = 2 * n as i64 + 1;
        let pos = |k: i64| -> usize {
            if k >= 0 {
                k as usize
            } else {
                (n as i64 - k) as usize
            }
        };
        let mut out = vec![Rat::zero(); (side * side) as usize];
        for ((a, b), v) in &self.entries {
            out[pos(*a) * side as usize + pos(*b)] = v.clone();
        }
        out
    }
}

/// Super Jacobi identity over all basis triples:
/// [[a,b],c] = [a,[b,c]] − (−1)^{p(a)p(b)} [b,[a,c]].
pub fn check_jacobi(alg: &Algebra) -> Result<(), String> {
    let dim = alg.dim();
    for a in 0..dim {
        for b in 0..dim {
            let sign = if alg.parity(a).is_odd() && alg.parity(b).is_odd() {
                -Rat::one()
            } else {
                Rat::one()
            };
            for c in 0..dim {
                let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                let mut push = |k: usize, v: Rat| {
                    let e = acc.entry(k).or_insert_with(Rat::zero);
                    *e += v;
                };
                for (k, s) in alg.bracket_basis(a, b) {
                    for (m, t) in alg.bracket_basis(*k, c) {
                        push(*m, s * t);
                    }
                }
                for (k, s) in alg.bracket_basis(b, c) {
                    for (m, t) in alg.bracket_basis(a, *k) {
                        push(*m, -(s * t));
                    }
                }
                for (k, s) in alg.bracket_basis(a, c) {
                    for (m, t) in alg.bracket_basis(b, *k) {
                        push(*m, &sign * s * t);
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return Err(format!(
                        "super Jacobi fails at ({}, {}, {})",
                        alg.basis[a].name, alg.basis[b].name, alg.basis[c].name
                    ));
                }
            }
        }
    }
    Ok(())
}

/// ([u,v]|w) = (u|[v,w]) over all basis triples.
pub fn check_form_invariance(alg: &Algebra) -> Result<(), String> {
    let dim = alg.dim();
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let mut lhs = Rat::zero();
                for (k, s) in alg.bracket_basis(a, b) {
                    lhs += s * alg.form_basis(*k, c);
                }
                let mut rhs = Rat::zero();
                for (k, s) in alg.bracket_basis(b, c) {
                    rhs += s * alg.form_basis(a, *k);
                }
                if lhs != rhs {
                    return Err(format!(
                        "form invariance fails at ({}, {}, {})",
                        alg.basis[a].name, alg.basis[b].name, alg.basis[c].name
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Good-grading axioms for f_prin, the dimension formula for the centralizer
/// and nondegeneracy of χ([·,·]) on g_{1/2}.
pub fn check_good_grading(alg: &Algebra) -> Result<(), String> {
    let dim = alg.dim();
    // (1) [g_i, g_j] ⊂ g_{i+j}.
    for a in 0..dim {
        for b in 0..dim {
            let d = alg.degree2(a) + alg.degree2(b);
            for (k, _) in alg.bracket_basis(a, b) {
                if alg.degree2(*k) != d {
                    return Err(format!(
                        "grading axiom (1) fails: [{}, {}] hits {}",
                        alg.basis[a].name, alg.basis[b].name, alg.basis[*k].name
                    ));
                }
            }
        }
    }
    // (2) f ∈ g_{−1}.
    let f = alg.principal_nilpotent();
    if f.degree2(alg) != Some(-2) {
        return Err("grading axiom (2) fails: f_prin is not in g_{-1}".into());
    }
    if f.parity(alg) != Some(Parity::Even) {
        return Err("f_prin must be even".into());
    }
    // (3) ad(f): g_j → g_{j−1} injective for j ≥ 1/2, surjective for j ≤ 1/2.
    for d2 in alg.degrees2() {
        let src = alg.degree_slice(d2);
        let dst = alg.degree_slice(d2 - 2);
        let mut m = RationalMatrix::new(dst.len().max(1), src.len());
        for (col, &s) in src.iter().enumerate() {
            let img = alg
                .bracket(f, &LieElement::basis(s))
                .expect("basis vectors are homogeneous");
            for (k, v) in img.coords() {
                let row = dst
                    .iter()
                    .position(|t| t == k)
                    .expect("axiom (1) already checked");
                m.add(row, col, v.clone());
            }
        }
        let rank = m.rank();
        if d2 >= 1 && rank != src.len() {
            return Err(format!("grading axiom (3): ad(f) not injective on degree {d2}/2"));
        }
        if d2 <= 1 && rank != dst.len() {
            return Err(format!("grading axiom (3): ad(f) not surjective onto degree {}/2", d2 - 2));
        }
    }
    // (4) (g_i|g_j) = 0 unless i + j = 0.
    for a in 0..dim {
        for b in 0..dim {
            if alg.degree2(a) + alg.degree2(b) != 0 && !alg.form_basis(a, b).is_zero() {
                return Err(format!(
                    "grading axiom (4) fails at ({}, {})",
                    alg.basis[a].name, alg.basis[b].name
                ));
            }
        }
    }
    // (5) dim g^f = dim g_0 + dim g_{1/2} (= n + 1 here).
    let mut m = RationalMatrix::new(dim, dim);
    for col in 0..dim {
        let img = alg
            .bracket(f, &LieElement::basis(col))
            .expect("basis vectors are homogeneous");
        for (k, v) in img.coords() {
            m.add(*k, col, v.clone());
        }
    }
    let centralizer = m.kernel_basis().len();
    let expected = alg.degree_slice(0).len() + alg.degree_slice(1).len();
    if centralizer != expected {
        return Err(format!(
            "grading axiom (5) fails: dim g^f = {centralizer}, expected {expected}"
        ));
    }
    if expected != alg.n + 1 {
        return Err(format!(
            "dim g_0 + dim g_(1/2) = {expected}, expected n + 1 = {}",
            alg.n + 1
        ));
    }
    // χ([·,·]) nondegenerate on g_{1/2}: here dim g_{1/2} = 1, so the single
    // diagonal value must be nonzero; the normalization pins it to 2.
    let half = alg.degree_slice(1);
    if half.len() != 1 {
        return Err(format!("dim g_(1/2) = {}, expected 1", half.len()));
    }
    let u = LieElement::basis(half[0]);
    let sq = alg.bracket(&u, &u).expect("homogeneous");
    if alg.chi(&sq) != rat(2) {
        return Err(format!(
            "chi([u(a_n), u(a_n)]) = {}, expected 2",
            alg.chi(&sq)
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_n_zero() {
        assert!(matches!(Algebra::build(0), Err(OspError::InvalidRank(0))));
    }

    #[test]
    fn dimensions_n1() {
        let alg = Algebra::build(1).unwrap();
        assert_eq!(alg.dim(), 5);
        let even = alg.basis.iter().filter(|b| b.parity == Parity::Even).count();
        assert_eq!(even, 3);
        assert_eq!(alg.dim() - even, 2);
    }

    #[test]
    fn dimensions_n2() {
        let alg = Algebra::build(2).unwrap();
        assert_eq!(alg.dim(), 14);
        assert_eq!(alg.positive_roots().len(), 6);
    }

    #[test]
    fn simple_root_is_odd_at_n1() {
        let alg = Algebra::build(1).unwrap();
        let an = &alg.basis[alg.alpha_n()];
        let root = an.root.as_ref().unwrap();
        assert_eq!(root.eps, vec![1]);
        assert_eq!(root.parity(), Parity::Odd);
    }

    #[test]
    fn cartans_commute() {
        let alg = Algebra::build(2).unwrap();
        let h1 = LieElement::basis(alg.cartan(1));
        let h2 = LieElement::basis(alg.cartan(2));
        assert!(alg.bracket(&h1, &h2).unwrap().is_zero());
    }

    #[test]
    fn root_vectors_are_ad_h_eigenvectors() {
        let alg = Algebra::build(2).unwrap();
        for i in 1..=2 {
            let h = LieElement::basis(alg.cartan(i));
            for idx in 0..alg.dim() {
                let b = &alg.basis[idx];
                let Some(_) = &b.root else { continue };
                let img = alg.bracket(&h, &LieElement::basis(idx)).unwrap();
                let expected = LieElement::basis(idx).scaled(&rat(b.weight[i - 1]));
                assert_eq!(img, expected, "ad(h{i}) on {}", b.name);
            }
        }
    }

    #[test]
    fn odd_square_hits_double_root() {
        let alg = Algebra::build(2).unwrap();
        let x = LieElement::basis(alg.alpha_n());
        let sq = alg.bracket(&x, &x).unwrap();
        assert_eq!(sq.coords().len(), 1);
        let (&idx, c) = sq.coords().iter().next().unwrap();
        assert_eq!(alg.basis[idx].root.as_ref().unwrap().eps, vec![0, 2]);
        assert!(!c.is_zero());
    }

    #[test]
    fn mixed_parity_bracket_rejected() {
        let alg = Algebra::build(1).unwrap();
        let mixed = LieElement::basis(alg.cartan(1)).plus(&LieElement::basis(alg.alpha_n()));
        let h = LieElement::basis(alg.cartan(1));
        assert_eq!(alg.bracket(&mixed, &h), Err(OspError::MixedParity));
    }

    #[test]
    fn form_values() {
        let alg = Algebra::build(2).unwrap();
        let h1 = LieElement::basis(alg.cartan(1));
        let h2 = LieElement::basis(alg.cartan(2));
        assert_eq!(alg.form(&h1, &h1), rat(2));
        assert_eq!(alg.form(&h1, &h2), rat(0));
        // (u(α_1)|u(α_1)) = 0: both sit in degree 1.
        let a1 = alg
            .basis
            .iter()
            .position(|b| b.root.as_ref().map(|r| r.eps.clone()) == Some(vec![1, -1]))
            .unwrap();
        assert_eq!(alg.form_basis(a1, a1), &rat(0));
    }

    #[test]
    fn grading_degrees() {
        let alg = Algebra::build(2).unwrap();
        assert_eq!(alg.degree2(alg.alpha_n()), 1);
        assert_eq!(alg.degree_slice(1), vec![alg.alpha_n()]);
        let two_e1 = alg
            .basis
            .iter()
            .position(|b| b.root.as_ref().map(|r| r.eps.clone()) == Some(vec![2, 0]))
            .unwrap();
        // deg u(2ε_1) = 2n − 1 = 3.
        assert_eq!(alg.degree2(two_e1), 6);
        let neg_a1 = alg
            .basis
            .iter()
            .position(|b| b.root.as_ref().map(|r| r.eps.clone()) == Some(vec![-1, 1]))
            .unwrap();
        assert_eq!(alg.degree2(neg_a1), -2);
    }

    #[test]
    fn f_prin_support() {
        let alg1 = Algebra::build(1).unwrap();
        let f1 = alg1.principal_nilpotent();
        assert_eq!(f1.coords().len(), 1);
        let idx = *f1.coords().keys().next().unwrap();
        assert_eq!(alg1.basis[idx].root.as_ref().unwrap().eps, vec![-2]);

        let alg2 = Algebra::build(2).unwrap();
        let f2 = alg2.principal_nilpotent();
        let roots: Vec<Vec<i64>> = f2
            .coords()
            .keys()
            .map(|k| alg2.basis[*k].root.as_ref().unwrap().eps.clone())
            .collect();
        assert!(roots.contains(&vec![-1, 1]));
        assert!(roots.contains(&vec![0, -2]));
        assert_eq!(f2.degree2(&alg2), Some(-2));
    }

    #[test]
    fn chi_values() {
        for n in 1..=2 {
            let alg = Algebra::build(n).unwrap();
            assert!(alg.chi_basis(alg.alpha_n()).is_zero());
            for i in 1..=n {
                assert!(alg.chi_basis(alg.cartan(i)).is_zero());
            }
            let two_en = alg
                .basis
                .iter()
                .position(|b| {
                    b.root.as_ref().map(|r| r.eps.clone()) == Some({
                        let mut e = vec![0; n];
                        e[n - 1] = 2;
                        e
                    })
                })
                .unwrap();
            assert!(!alg.chi_basis(two_en).is_zero());
            // χ vanishes outside g_1.
            for idx in 0..alg.dim() {
                if alg.degree2(idx) != 2 {
                    assert!(alg.chi_basis(idx).is_zero(), "chi nonzero off g_1");
                }
            }
        }
    }

    #[test]
    fn rho_values() {
        let alg1 = Algebra::build(1).unwrap();
        assert_eq!(alg1.rho().eps, vec![frac(1, 2)]);
        let alg2 = Algebra::build(2).unwrap();
        assert_eq!(alg2.rho().eps, vec![frac(3, 2), frac(1, 2)]);
    }

    #[test]
    fn structure_suite_n1() {
        let alg = Algebra::build(1).unwrap();
        check_jacobi(&alg).unwrap();
        check_form_invariance(&alg).unwrap();
        check_good_grading(&alg).unwrap();
    }

    #[test]
    fn structure_suite_n2() {
        let alg = Algebra::build(2).unwrap();
        check_jacobi(&alg).unwrap();
        check_form_invariance(&alg).unwrap();
        check_good_grading(&alg).unwrap();
    }
}
