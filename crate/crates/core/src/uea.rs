//! PBW normal-form engine for U(osp(1|2n)).
//!
//! Elements are finitely supported maps from ordered PBW monomials to exact
//! rationals. Multiplication rewrites words to the canonical normal form by
//! always reducing the leftmost out-of-order adjacent pair:
//!   uv → (−1)^{p(u)p(v)} vu + [u,v]       (u after v in the basis order)
//!   uu → ½ [u,u]                          (u odd)
//! Both rules terminate and the resulting normal form is independent of the
//! rewrite order, which the tests pin down via associativity and
//! idempotence.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{frac, in_span, rat_to_string, Rat, RationalMatrix};
use crate::osp::{Algebra, LieElement, OspError, Parity};

/// Ordered PBW monomial: labels strictly increasing in the basis order,
/// exponents ≥ 1, exponent 1 on odd labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct PBWMonomial {
    factors: Vec<(usize, u32)>,
}

impl PBWMonomial {
    pub fn one() -> PBWMonomial {
        PBWMonomial::default()
    }

    /// Validating constructor.
    pub fn new(alg: &Algebra, factors: Vec<(usize, u32)>) -> Result<PBWMonomial, OspError> {
        let mut prev: Option<usize> = None;
        for &(label, exp) in &factors {
            let ok = label < alg.dim()
                && exp >= 1
                && prev.is_none_or(|p| p < label)
                && (!alg.parity(label).is_odd() || exp == 1);
            if !ok {
                return Err(OspError::MixedParity);
            }
            prev = Some(label);
        }
        Ok(PBWMonomial { factors })
    }

    /// Internal constructor for factor lists already known to be valid.
    pub(crate) fn from_factors_unchecked(factors: Vec<(usize, u32)>) -> PBWMonomial {
        PBWMonomial { factors }
    }

    /// Internal constructor for words already in normal form.
    pub(crate) fn from_sorted_word(word: &[usize]) -> PBWMonomial {
        let mut factors: Vec<(usize, u32)> = Vec::new();
        for &l in word {
            match factors.last_mut() {
                Some((prev, e)) if *prev == l => *e += 1,
                _ => factors.push((l, 1)),
            }
        }
        PBWMonomial { factors }
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for &(l, e) in &self.factors {
            for _ in 0..e {
                w.push(l);
            }
        }
        w
    }

    pub fn parity(&self, alg: &Algebra) -> Parity {
        let odd = self
            .factors
            .iter()
            .filter(|&&(l, _)| alg.parity(l).is_odd())
            .count();
        if odd % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// ad(h)-weight in ε-coordinates.
    pub fn weight(&self, alg: &Algebra) -> Vec<i64> {
        let mut w = vec![0i64; alg.n];
        for &(l, e) in &self.factors {
            for (i, c) in alg.basis[l].weight.iter().enumerate() {
                w[i] += c * e as i64;
            }
        }
        w
    }

    /// Degree-major order used for solver columns and display.
    pub fn graded_cmp(&self, other: &PBWMonomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

/// Element of U(osp(1|2n)) in canonical normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UEAElement {
    terms: BTreeMap<PBWMonomial, Rat>,
}

impl UEAElement {
    pub fn zero() -> UEAElement {
        UEAElement::default()
    }

    pub fn one() -> UEAElement {
        UEAElement::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> UEAElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PBWMonomial::one(), c);
        }
        UEAElement { terms }
    }

    pub fn from_monomial(m: PBWMonomial, c: Rat) -> UEAElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        UEAElement { terms }
    }

    pub fn from_terms(terms: BTreeMap<PBWMonomial, Rat>) -> UEAElement {
        UEAElement {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Degree-1 embedding of a Lie element.
    pub fn from_lie(x: &LieElement) -> UEAElement {
        let mut terms = BTreeMap::new();
        for (k, c) in x.coords() {
            terms.insert(PBWMonomial { factors: vec![(*k, 1)] }, c.clone());
        }
        UEAElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<PBWMonomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PBWMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn plus(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &UEAElement) -> UEAElement {
        self.plus(&other.scaled(&-Rat::one()))
    }

    pub fn scaled(&self, c: &Rat) -> UEAElement {
        if c.is_zero() {
            return UEAElement::zero();
        }
        UEAElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// PBW filtration degree: maximal total exponent (0 for the zero element).
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(PBWMonomial::degree).max().unwrap_or(0)
    }

    /// Parity of the support; None if mixed, Even for zero.
    pub fn parity(&self, alg: &Algebra) -> Option<Parity> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = m.parity(alg);
            match p {
                None => p = Some(q),
                Some(prev) if prev != q => return None,
                _ => {}
            }
        }
        p.or(Some(Parity::Even))
    }

    /// Split into (even, odd) parts.
    pub fn parity_split(&self, alg: &Algebra) -> (UEAElement, UEAElement) {
        let mut even = UEAElement::zero();
        let mut odd = UEAElement::zero();
        for (m, c) in &self.terms {
            if m.parity(alg).is_odd() {
                odd.add_term(m.clone(), c.clone());
            } else {
                even.add_term(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    pub fn display<'a>(&'a self, alg: &'a Algebra) -> impl fmt::Display + 'a {
        DisplayElement { terms: &self.terms, alg }
    }
}

/// Rewrite a word over basis labels into normal form, scaled by `coeff`.
pub fn normal_order(alg: &Algebra, word: &[usize], coeff: Rat) -> UEAElement {
    let mut out = BTreeMap::new();
    normal_order_into(alg, word.to_vec(), coeff, 0, &mut out);
    UEAElement::from_terms(out)
}

/// Core rewriting loop. `start` is a hint: positions before `start − 1` are
/// already known to be in order.
fn normal_order_into(
    alg: &Algebra,
    word: Vec<usize>,
    coeff: Rat,
    start: usize,
    out: &mut BTreeMap<PBWMonomial, Rat>,
) {
    if coeff.is_zero() {
        return;
    }
    let mut stack: Vec<(Vec<usize>, Rat, usize)> = vec![(word, coeff, start)];
    while let Some((w, c, hint)) = stack.pop() {
        let mut violation: Option<usize> = None;
        let from = hint.saturating_sub(1);
        for j in from..w.len().saturating_sub(1) {
            let (a, b) = (w[j], w[j + 1]);
            if a > b || (a == b && alg.parity(a).is_odd()) {
                violation = Some(j);
                break;
            }
        }
        let Some(j) = violation else {
            let m = PBWMonomial::from_sorted_word(&w);
            let e = out.entry(m).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                let key = out.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
                if let Some(k) = key {
                    out.remove(&k);
                }
            }
            continue;
        };
        let (a, b) = (w[j], w[j + 1]);
        if a == b {
            // odd square: uu = ½[u,u]
            for (k, s) in alg.bracket_basis(a, a) {
                let mut w2 = Vec::with_capacity(w.len() - 1);
                w2.extend_from_slice(&w[..j]);
                w2.push(*k);
                w2.extend_from_slice(&w[j + 2..]);
                stack.push((w2, &c * s * frac(1, 2), j));
            }
        } else {
            let sign = if alg.parity(a).is_odd() && alg.parity(b).is_odd() {
                -Rat::one()
            } else {
                Rat::one()
            };
            let mut swapped = w.clone();
            swapped.swap(j, j + 1);
            stack.push((swapped, &c * sign, j));
            for (k, s) in alg.bracket_basis(a, b) {
                let mut w2 = Vec::with_capacity(w.len() - 1);
                w2.extend_from_slice(&w[..j]);
                w2.push(*k);
                w2.extend_from_slice(&w[j + 2..]);
                stack.push((w2, &c * s, j));
            }
        }
    }
}

/// Bilinear associative product.
pub fn multiply(alg: &Algebra, a: &UEAElement, b: &UEAElement) -> UEAElement {
    let mut out = BTreeMap::new();
    for (m1, c1) in a.terms() {
        let w1 = m1.word();
        for (m2, c2) in b.terms() {
            let mut word = w1.clone();
            word.extend(m2.word());
            normal_order_into(alg, word, c1 * c2, w1.len(), &mut out);
        }
    }
    UEAElement::from_terms(out)
}

/// [a, b] = ab − (−1)^{p(a)p(b)} ba for parity-homogeneous arguments.
pub fn supercommutator(
    alg: &Algebra,
    a: &UEAElement,
    b: &UEAElement,
) -> Result<UEAElement, OspError> {
    let pa = a.parity(alg).ok_or(OspError::MixedParity)?;
    let pb = b.parity(alg).ok_or(OspError::MixedParity)?;
    let ab = multiply(alg, a, b);
    let ba = multiply(alg, b, a);
    Ok(if pa.is_odd() && pb.is_odd() {
        ab.plus(&ba)
    } else {
        ab.minus(&ba)
    })
}

/// ad(x)(a) = [x, a], extended linearly over the parity parts of `a`.
pub fn adjoint(alg: &Algebra, x: &LieElement, a: &UEAElement) -> Result<UEAElement, OspError> {
    let xe = UEAElement::from_lie(x);
    if x.parity(alg).is_none() {
        return Err(OspError::MixedParity);
    }
    let (even, odd) = a.parity_split(alg);
    let mut out = UEAElement::zero();
    for part in [even, odd] {
        if !part.is_zero() {
            out = out.plus(&supercommutator(alg, &xe, &part)?);
        }
    }
    Ok(out)
}

/// x·a − (−1)^{p(x)(p(a)+1)} a·x, the anticenter-defining action.
pub fn twisted_adjoint(
    alg: &Algebra,
    x: &LieElement,
    a: &UEAElement,
) -> Result<UEAElement, OspError> {
    let px = x.parity(alg).ok_or(OspError::MixedParity)?;
    let xe = UEAElement::from_lie(x);
    let (even, odd) = a.parity_split(alg);
    let mut out = UEAElement::zero();
    for part in [even, odd] {
        if part.is_zero() {
            continue;
        }
        let pa = part.parity(alg).expect("split parts are homogeneous");
        let xa = multiply(alg, &xe, &part);
        let ax = multiply(alg, &part, &xe);
        // (−1)^{p(x)(p(a)+1)}: nontrivial exactly when x is odd and a even.
        let term = if px.is_odd() && !pa.is_odd() {
            xa.plus(&ax)
        } else {
            xa.minus(&ax)
        };
        out = out.plus(&term);
    }
    Ok(out)
}

/// All PBW monomials over `labels` with total degree ≤ `max_degree`,
/// optionally restricted to a fixed ad(h)-weight, in graded order.
pub fn enumerate_pbw_over(
    alg: &Algebra,
    labels: &[usize],
    max_degree: usize,
    weight: Option<&[i64]>,
) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    let mut current: Vec<(usize, u32)> = Vec::new();
    fn rec(
        alg: &Algebra,
        labels: &[usize],
        pos: usize,
        budget: usize,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<PBWMonomial>,
    ) {
        out.push(PBWMonomial {
            factors: current.clone(),
        });
        for i in pos..labels.len() {
            let label = labels[i];
            let cap = if alg.parity(label).is_odd() { 1 } else { budget as u32 };
            for e in 1..=cap.min(budget as u32) {
                current.push((label, e));
                rec(alg, labels, i + 1, budget - e as usize, current, out);
                current.pop();
            }
        }
    }
    rec(alg, labels, 0, max_degree, &mut current, &mut out);
    if let Some(target) = weight {
        out.retain(|m| m.weight(alg) == target);
    }
    out.sort_by(|a, b| a.graded_cmp(b));
    out
}

/// All PBW monomials of degree ≤ `max_degree` over the full basis.
pub fn enumerate_pbw(
    alg: &Algebra,
    max_degree: usize,
    weight: Option<&[i64]>,
) -> Vec<PBWMonomial> {
    let labels: Vec<usize> = (0..alg.dim()).collect();
    enumerate_pbw_over(alg, &labels, max_degree, weight)
}

// ---- span arithmetic over term maps -----------------------------------

/// Coordinate rows of the given term maps over the union of their monomials.
pub fn coordinate_rows(maps: &[&BTreeMap<PBWMonomial, Rat>]) -> Vec<Vec<Rat>> {
    let mut index: BTreeMap<&PBWMonomial, usize> = BTreeMap::new();
    for m in maps {
        for k in m.keys() {
            let next = index.len();
            index.entry(k).or_insert(next);
        }
    }
    maps.iter()
        .map(|m| {
            let mut row = vec![Rat::zero(); index.len()];
            for (k, v) in m.iter() {
                row[index[k]] = v.clone();
            }
            row
        })
        .collect()
}

/// Rank of the span of the given term maps.
pub fn span_rank(maps: &[&BTreeMap<PBWMonomial, Rat>]) -> usize {
    RationalMatrix::from_rows(&coordinate_rows(maps)).rank()
}

/// Do two families span the same subspace?
pub fn spans_equal(
    a: &[&BTreeMap<PBWMonomial, Rat>],
    b: &[&BTreeMap<PBWMonomial, Rat>],
) -> bool {
    let mut all: Vec<&BTreeMap<PBWMonomial, Rat>> = Vec::new();
    all.extend_from_slice(a);
    all.extend_from_slice(b);
    let rows = coordinate_rows(&all);
    let (rows_a, rows_b) = rows.split_at(a.len());
    let basis_b: Vec<Vec<Rat>> = rows_b.to_vec();
    for v in rows_a {
        if in_span(v, &basis_b).expect("uniform dimensions").is_none() {
            return false;
        }
    }
    let basis_a: Vec<Vec<Rat>> = rows_a.to_vec();
    for v in rows_b {
        if in_span(v, &basis_a).expect("uniform dimensions").is_none() {
            return false;
        }
    }
    true
}

struct DisplayElement<'a> {
    terms: &'a BTreeMap<PBWMonomial, Rat>,
    alg: &'a Algebra,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms, self.alg)
    }
}

/// Shared renderer for term maps (also used by Whittaker vectors).
pub(crate) fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<PBWMonomial, Rat>,
    alg: &Algebra,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut keys: Vec<&PBWMonomial> = terms.keys().collect();
    keys.sort_by(|a, b| a.graded_cmp(b));
    for (i, m) in keys.iter().enumerate() {
        let c = &terms[*m];
        let neg = *c < Rat::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let show_coeff = !abs.is_one() || m.is_one();
        if show_coeff {
            write!(f, "{}", rat_to_string(&abs))?;
        }
        if !m.is_one() {
            if show_coeff {
                write!(f, "*")?;
            }
            let mut first = true;
            for &(l, e) in m.factors() {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "{}", alg.basis[l].name)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                first = false;
            }
        }
    }
    Ok(())
}

/// Render a term map with the algebra's basis names.
pub fn display_terms<'a>(
    terms: &'a BTreeMap<PBWMonomial, Rat>,
    alg: &'a Algebra,
) -> impl fmt::Display + 'a {
    DisplayElement { terms, alg }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::osp::Algebra;
    use proptest::prelude::*;

    fn n1() -> Algebra {
        Algebra::build(1).unwrap()
    }

    // n=1 basis order: u(-e1)=0, u(-2e1)=1, h1=2, u(e1)=3, u(2e1)=4.
    const Y: usize = 0;
    const F: usize = 1;
    const H: usize = 2;
    const X: usize = 3;
    const E: usize = 4;

    fn mono(alg: &Algebra, factors: &[(usize, u32)]) -> PBWMonomial {
        PBWMonomial::new(alg, factors.to_vec()).unwrap()
    }

    #[test]
    fn already_ordered_word() {
        let alg = n1();
        let got = normal_order(&alg, &[H], Rat::one());
        assert_eq!(got, UEAElement::from_monomial(mono(&alg, &[(H, 1)]), Rat::one()));
    }

    #[test]
    fn one_swap_produces_bracket() {
        let alg = n1();
        // u(e1)·u(-e1) = −u(-e1)u(e1) + [u(e1), u(-e1)] = −yx + h1.
        let got = normal_order(&alg, &[X, Y], Rat::one());
        let mut expected = UEAElement::zero();
        expected.add_term(mono(&alg, &[(Y, 1), (X, 1)]), -Rat::one());
        expected.add_term(mono(&alg, &[(H, 1)]), Rat::one());
        assert_eq!(got, expected);
    }

    #[test]
    fn odd_square_rule() {
        let alg = n1();
        // u(e1)² = ½[u(e1), u(e1)] = −u(2e1) in this realization.
        let got = normal_order(&alg, &[X, X], Rat::one());
        assert_eq!(got, UEAElement::from_monomial(mono(&alg, &[(E, 1)]), -Rat::one()));
    }

    #[test]
    fn unit_and_powers() {
        let alg = n1();
        let h = UEAElement::from_monomial(mono(&alg, &[(H, 1)]), Rat::one());
        assert_eq!(multiply(&alg, &UEAElement::one(), &h), h);
        assert_eq!(
            multiply(&alg, &h, &h),
            UEAElement::from_monomial(mono(&alg, &[(H, 2)]), Rat::one())
        );
    }

    #[test]
    fn commutator_of_opposite_orders() {
        let alg = n1();
        let x = UEAElement::from_monomial(mono(&alg, &[(X, 1)]), Rat::one());
        let y = UEAElement::from_monomial(mono(&alg, &[(Y, 1)]), Rat::one());
        let xy = multiply(&alg, &x, &y);
        let yx = multiply(&alg, &y, &x);
        // x odd, y odd: [x, y] = xy + yx = embedded bracket = h1.
        let anti = xy.plus(&yx);
        let bracket = alg
            .bracket(&LieElement::basis(X), &LieElement::basis(Y))
            .unwrap();
        assert_eq!(anti, UEAElement::from_lie(&bracket));
    }

    #[test]
    fn supercommutator_restricts_to_bracket() {
        let alg = n1();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let a = UEAElement::from_lie(&LieElement::basis(i));
                let b = UEAElement::from_lie(&LieElement::basis(j));
                let got = supercommutator(&alg, &a, &b).unwrap();
                let expected = UEAElement::from_lie(
                    &alg.bracket(&LieElement::basis(i), &LieElement::basis(j)).unwrap(),
                );
                assert_eq!(got, expected, "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn odd_square_as_supercommutator() {
        let alg = n1();
        let x = UEAElement::from_monomial(mono(&alg, &[(X, 1)]), Rat::one());
        let lhs = supercommutator(&alg, &x, &x).unwrap();
        let rhs = multiply(&alg, &x, &x).scaled(&rat(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_parity_rejected() {
        let alg = n1();
        let mixed = UEAElement::from_monomial(mono(&alg, &[(H, 1)]), Rat::one())
            .plus(&UEAElement::from_monomial(mono(&alg, &[(X, 1)]), Rat::one()));
        assert!(supercommutator(&alg, &mixed, &mixed).is_err());
    }

    #[test]
    fn adjoint_on_cartans() {
        let alg = n1();
        let h = LieElement::basis(H);
        let h2 = UEAElement::from_monomial(mono(&alg, &[(H, 2)]), Rat::one());
        assert!(adjoint(&alg, &h, &h2).unwrap().is_zero());
    }

    #[test]
    fn adjoint_weight_additivity() {
        let alg = n1();
        // ad(h1)(y·f·x) = (−1 − 2 + 1)(y·f·x) = −2 y·f·x.
        let m = mono(&alg, &[(Y, 1), (F, 1), (X, 1)]);
        let elem = UEAElement::from_monomial(m.clone(), Rat::one());
        let got = adjoint(&alg, &LieElement::basis(H), &elem).unwrap();
        assert_eq!(got, elem.scaled(&rat(-2)));
        assert_eq!(m.weight(&alg), vec![-2]);
    }

    #[test]
    fn twisted_adjoint_signs() {
        let alg = n1();
        let h2 = UEAElement::from_monomial(mono(&alg, &[(H, 2)]), Rat::one());
        // even x: twisted = adjoint.
        let e = LieElement::basis(E);
        assert_eq!(
            twisted_adjoint(&alg, &e, &h2).unwrap(),
            adjoint(&alg, &e, &h2).unwrap()
        );
        // odd x, even a: anticommutator.
        let x = LieElement::basis(X);
        let xe = UEAElement::from_lie(&x);
        let expected = multiply(&alg, &xe, &h2).plus(&multiply(&alg, &h2, &xe));
        assert_eq!(twisted_adjoint(&alg, &x, &h2).unwrap(), expected);
    }

    #[test]
    fn enumerate_degree_zero() {
        let alg = n1();
        let ms = enumerate_pbw(&alg, 0, None);
        assert_eq!(ms, vec![PBWMonomial::one()]);
    }

    #[test]
    fn enumerate_degree_one_n1() {
        let alg = n1();
        assert_eq!(enumerate_pbw(&alg, 1, None).len(), 6);
    }

    #[test]
    fn enumerate_weight_zero_degree_two_n1() {
        let alg = n1();
        // Brute-force oracle: all degree ≤ 2 monomials, filtered by weight.
        let all = enumerate_pbw(&alg, 2, None);
        let by_filter: Vec<_> = all
            .iter()
            .filter(|m| m.weight(&alg) == vec![0])
            .cloned()
            .collect();
        let direct = enumerate_pbw(&alg, 2, Some(&[0]));
        assert_eq!(direct, by_filter);
        assert_eq!(direct.len(), 5); // 1, h, h², yx, fe
    }

    #[test]
    fn weight_zero_is_exactly_the_cartan_kernel() {
        let alg = n1();
        for m in enumerate_pbw(&alg, 3, None) {
            let elem = UEAElement::from_monomial(m.clone(), Rat::one());
            let killed = (1..=alg.n).all(|i| {
                adjoint(&alg, &LieElement::basis(alg.cartan(i)), &elem)
                    .unwrap()
                    .is_zero()
            });
            assert_eq!(killed, m.weight(&alg) == vec![0], "monomial {:?}", m);
        }
    }

    #[test]
    fn filtration_bounds() {
        let alg = n1();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let a = UEAElement::from_lie(&LieElement::basis(i));
                let b = UEAElement::from_lie(&LieElement::basis(j));
                let prod = multiply(&alg, &a, &b);
                assert!(prod.filtration_degree() <= 2);
                let sc = supercommutator(&alg, &a, &b).unwrap();
                assert!(sc.filtration_degree() <= 1, "commutator must drop degree");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_is_canonical(word in proptest::collection::vec(0usize..5, 0..6)) {
            let alg = n1();
            let once = normal_order(&alg, &word, Rat::one());
            let mut again = UEAElement::zero();
            for (m, c) in once.terms() {
                again = again.plus(&normal_order(&alg, &m.word(), c.clone()));
            }
            prop_assert_eq!(once, again);
        }

        #[test]
        fn multiplication_is_associative(
            wa in proptest::collection::vec(0usize..5, 0..4),
            wb in proptest::collection::vec(0usize..5, 0..4),
            wc in proptest::collection::vec(0usize..5, 0..4),
        ) {
            let alg = n1();
            let a = normal_order(&alg, &wa, Rat::one());
            let b = normal_order(&alg, &wb, Rat::one());
            let c = normal_order(&alg, &wc, Rat::one());
            let left = multiply(&alg, &multiply(&alg, &a, &b), &c);
            let right = multiply(&alg, &a, &multiply(&alg, &b, &c));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn adjoint_preserves_filtration_degree(
            word in proptest::collection::vec(0usize..5, 0..5),
            gen in 0usize..5,
        ) {
            let alg = n1();
            let a = normal_order(&alg, &word, Rat::one());
            let before = a.filtration_degree();
            let img = adjoint(&alg, &LieElement::basis(gen), &a).unwrap();
            prop_assert!(img.is_zero() || img.filtration_degree() <= before);
        }
    }
}
