//! Degree-bounded computation of the center Z(g), the anticenter 𝒜(g) and
//! the ghost center Z̃(g) = Z(g) ⊕ 𝒜(g), plus the Casimir elements and the
//! Casimir ghost T.
//!
//! The invariance solves run over weight-0 PBW monomials only: commuting
//! with the Cartan subalgebra forces weight zero, a restriction asserted by
//! the uea tests. One block row per root-vector generator's (twisted)
//! adjoint action feeds the exact kernel solver; the returned bases are the
//! canonical echelon output of that solver and every element is re-checked
//! against all Lie generators after the solve.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{in_span, Rat, RationalMatrix};
use crate::hc::{eta, sigma, HCPolynomial};
use crate::osp::{Algebra, LieElement};
use crate::uea::{
    adjoint, enumerate_pbw, multiply, spans_equal, twisted_adjoint, PBWMonomial, UEAElement,
};

/// Solver-certified basis of Z ∩ F_d (or 𝒜 ∩ F_d).
#[derive(Debug, Clone)]
pub struct CenterBasis {
    pub degree: usize,
    pub elements: Vec<UEAElement>,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentersError {
    /// The invariant form (or its even restriction) failed to invert.
    DegenerateForm,
    /// No (or no unique) Casimir ghost with the required image.
    Ghost(String),
    /// A theorem-level span identity failed.
    SpanMismatch(String),
}

impl fmt::Display for CentersError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentersError::DegenerateForm => write!(f, "invariant form is degenerate"),
            CentersError::Ghost(msg) => write!(f, "casimir ghost: {msg}"),
            CentersError::SpanMismatch(msg) => write!(f, "span mismatch: {msg}"),
        }
    }
}

/// Dual basis coefficients w.r.t. the form restricted to `labels`:
/// u^b = Σ_k c[b][k] u_{labels[k]} with (u_a | u^b) = δ_ab.
fn dual_basis(alg: &Algebra, labels: &[usize]) -> Result<Vec<Vec<Rat>>, CentersError> {
    let k = labels.len();
    let columns: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|a| alg.form_basis(labels[a], labels[j]).clone())
                .collect()
        })
        .collect();
    let mut duals = Vec::with_capacity(k);
    for b in 0..k {
        let mut target = vec![Rat::zero(); k];
        target[b] = Rat::one();
        let sol = in_span(&target, &columns)
            .expect("square system")
            .ok_or(CentersError::DegenerateForm)?;
        duals.push(sol);
    }
    Ok(duals)
}

/// The Casimir element C = Σ_a (−1)^{p(a)} u_a u^a over dual bases of the
/// invariant form. The adjoint test against every generator is asserted.
pub fn casimir(alg: &Algebra) -> UEAElement {
    let labels: Vec<usize> = (0..alg.dim()).collect();
    let duals = dual_basis(alg, &labels).expect("the form on osp(1|2n) is nondegenerate");
    let mut c = UEAElement::zero();
    for (a, dual) in duals.iter().enumerate() {
        let sign = if alg.parity(a).is_odd() {
            -Rat::one()
        } else {
            Rat::one()
        };
        let ua = UEAElement::from_lie(&LieElement::basis(a));
        let mut udual = LieElement::zero();
        for (k, coeff) in dual.iter().enumerate() {
            udual.add_term(k, coeff.clone());
        }
        let prod = multiply(alg, &ua, &UEAElement::from_lie(&udual));
        c = c.plus(&prod.scaled(&sign));
    }
    for x in 0..alg.dim() {
        let img = adjoint(alg, &LieElement::basis(x), &c).expect("basis is homogeneous");
        assert!(img.is_zero(), "Casimir failed the adjoint test at generator {x}");
    }
    c
}

/// The Casimir of the even subalgebra sp(2n), built from the restricted
/// form. Central in U(g_0̄) (asserted against the even generators), not in
/// U(g).
pub fn casimir_even(alg: &Algebra) -> UEAElement {
    let labels: Vec<usize> = (0..alg.dim())
        .filter(|&i| !alg.parity(i).is_odd())
        .collect();
    let duals = dual_basis(alg, &labels).expect("the restricted form on sp(2n) is nondegenerate");
    let mut q = UEAElement::zero();
    for (a, dual) in duals.iter().enumerate() {
        let ua = UEAElement::from_lie(&LieElement::basis(labels[a]));
        let mut udual = LieElement::zero();
        for (k, coeff) in dual.iter().enumerate() {
            udual.add_term(labels[k], coeff.clone());
        }
        q = q.plus(&multiply(alg, &ua, &UEAElement::from_lie(&udual)));
    }
    for &x in &labels {
        let img = adjoint(alg, &LieElement::basis(x), &q).expect("basis is homogeneous");
        assert!(img.is_zero(), "even Casimir failed the adjoint test at generator {x}");
    }
    q
}

#[derive(Clone, Copy)]
enum Action {
    Adjoint,
    Twisted,
}

fn act(alg: &Algebra, action: Action, gen: usize, elem: &UEAElement) -> UEAElement {
    let x = LieElement::basis(gen);
    match action {
        Action::Adjoint => adjoint(alg, &x, elem),
        Action::Twisted => twisted_adjoint(alg, &x, elem),
    }
    .expect("basis generators are parity-homogeneous")
}

fn invariance_kernel(alg: &Algebra, d: usize, action: Action) -> Vec<UEAElement> {
    let weight0 = vec![0i64; alg.n];
    let columns = enumerate_pbw(alg, d, Some(&weight0));
    // Root-vector generators only: on weight-0 monomials the Cartan action
    // (twisted or not) is multiplication by the weight, identically zero.
    let generators: Vec<usize> = (0..alg.dim()).filter(|&i| !alg.is_cartan(i)).collect();
    let mut row_index: BTreeMap<(usize, PBWMonomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
    for (col, m) in columns.iter().enumerate() {
        let elem = UEAElement::from_monomial(m.clone(), Rat::one());
        for &g in &generators {
            let img = act(alg, action, g, &elem);
            for (target, coeff) in img.terms() {
                let next = row_index.len();
                let row = *row_index.entry((g, target.clone())).or_insert(next);
                entries.push((row, col, coeff.clone()));
            }
        }
    }
    let mut matrix = RationalMatrix::new(row_index.len().max(1), columns.len());
    for (row, col, coeff) in entries {
        matrix.add(row, col, coeff);
    }
    matrix
        .kernel_basis()
        .into_iter()
        .map(|ker| {
            let mut elem = UEAElement::zero();
            for (c, m) in ker.into_iter().zip(&columns) {
                elem.add_term(m.clone(), c);
            }
            elem
        })
        .collect()
}

fn certify(alg: &Algebra, action: Action, elements: &[UEAElement]) {
    for (i, z) in elements.iter().enumerate() {
        for g in 0..alg.dim() {
            assert!(
                act(alg, action, g, z).is_zero(),
                "solver output {i} fails the defining condition at generator {g}"
            );
        }
    }
}

/// Exact basis of Z(g) ∩ F_d.
pub fn compute_center(alg: &Algebra, d: usize) -> CenterBasis {
    let elements = invariance_kernel(alg, d, Action::Adjoint);
    certify(alg, Action::Adjoint, &elements);
    CenterBasis {
        degree: d,
        elements,
    }
}

/// Exact basis of 𝒜(g) ∩ F_d.
pub fn compute_anticenter(alg: &Algebra, d: usize) -> CenterBasis {
    let elements = invariance_kernel(alg, d, Action::Twisted);
    certify(alg, Action::Twisted, &elements);
    CenterBasis {
        degree: d,
        elements,
    }
}

/// σ∘η image of an element.
pub fn hc_image(alg: &Algebra, z: &UEAElement) -> HCPolynomial {
    sigma(alg, &eta(alg, z))
}

/// The Casimir ghost: the unique T ∈ 𝒜 ∩ F_{2n} with (σ∘η)(T) = h_1⋯h_n.
/// `anticenter` must have been computed to degree ≥ 2n.
pub fn casimir_ghost(alg: &Algebra, anticenter: &CenterBasis) -> Result<UEAElement, CentersError> {
    if anticenter.degree < 2 * alg.n {
        return Err(CentersError::Ghost(format!(
            "anticenter computed to degree {} < 2n = {}",
            anticenter.degree,
            2 * alg.n
        )));
    }
    let images: Vec<HCPolynomial> = anticenter
        .elements
        .iter()
        .map(|a| hc_image(alg, a))
        .collect();
    let mut target = HCPolynomial::zero(alg.n);
    target.add_term(vec![1; alg.n], Rat::one());

    // Coordinates of images and target over the union of poly monomials.
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for p in images.iter().chain([&target]) {
        for e in p.terms().keys() {
            let next = index.len();
            index.entry(e.clone()).or_insert(next);
        }
    }
    let dim = index.len();
    let vect = |p: &HCPolynomial| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); dim];
        for (e, c) in p.terms() {
            row[index[e]] = c.clone();
        }
        row
    };
    let image_vecs: Vec<Vec<Rat>> = images.iter().map(vect).collect();

    // Uniqueness: the map from anticenter coefficients to σ∘η images must
    // be injective on the computed basis.
    let mut m = RationalMatrix::new(dim.max(1), anticenter.elements.len());
    for (col, iv) in image_vecs.iter().enumerate() {
        for (row, c) in iv.iter().enumerate() {
            m.add(row, col, c.clone());
        }
    }
    if !m.kernel_basis().is_empty() {
        return Err(CentersError::Ghost(
            "sigma∘eta is not injective on the computed anticenter basis".into(),
        ));
    }
    let coeffs = in_span(&vect(&target), &image_vecs)
        .expect("uniform dimensions")
        .ok_or_else(|| {
            CentersError::Ghost("no anticenter element has image h_1⋯h_n".into())
        })?;
    let mut t = UEAElement::zero();
    for (c, a) in coeffs.iter().zip(&anticenter.elements) {
        t = t.plus(&a.scaled(c));
    }
    debug_assert_eq!(hc_image(alg, &t), target);
    Ok(t)
}

/// The ghost center to degree d: both solver bases, the Casimir ghost, and
/// the verified identity 𝒜 ∩ F_d = (Z·T) ∩ F_d.
#[derive(Debug, Clone)]
pub struct GhostCenter {
    pub center: CenterBasis,
    pub anticenter: CenterBasis,
    pub t: UEAElement,
}

impl GhostCenter {
    /// Requires d ≥ 2n so that T is inside the budget.
    pub fn compute(alg: &Algebra, d: usize) -> Result<GhostCenter, CentersError> {
        if d < 2 * alg.n {
            return Err(CentersError::Ghost(format!(
                "degree budget {d} is below 2n = {}",
                2 * alg.n
            )));
        }
        let center = compute_center(alg, d);
        let anticenter = compute_anticenter(alg, d);
        let t = casimir_ghost(alg, &anticenter)?;

        // 𝒜 ∩ F_d = (Z·T) ∩ F_d as subspaces.
        let products: Vec<UEAElement> = center
            .elements
            .iter()
            .map(|z| multiply(alg, z, &t))
            .filter(|zt| zt.filtration_degree() <= d)
            .collect();
        let lhs: Vec<_> = anticenter.elements.iter().map(UEAElement::terms).collect();
        let rhs: Vec<_> = products.iter().map(UEAElement::terms).collect();
        if !spans_equal(&lhs, &rhs) {
            return Err(CentersError::SpanMismatch(format!(
                "anticenter ∩ F_{d} differs from (Z·T) ∩ F_{d}"
            )));
        }
        Ok(GhostCenter {
            center,
            anticenter,
            t,
        })
    }

    /// Concatenated echelon basis of Z̃ ∩ F_d.
    pub fn basis(&self) -> Vec<UEAElement> {
        let mut out = self.center.elements.clone();
        out.extend(self.anticenter.elements.iter().cloned());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, rat};
    use crate::hc::central_character;
    use crate::osp::Weight;

    fn n1() -> Algebra {
        Algebra::build(1).unwrap()
    }

    #[test]
    fn casimir_eigenvalue_oracle_n1() {
        // χ_λ(C) = (λ | λ + 2ρ); at λ = xε_1 this is x(x+1)/2.
        let alg = n1();
        let c = casimir(&alg);
        for x in [-3i64, -1, 0, 1, 2, 5] {
            let lam = Weight { eps: alloc::vec![rat(x)] };
            let two_rho = alg.rho().add(&alg.rho());
            let oracle = lam.form(&lam.add(&two_rho));
            assert_eq!(central_character(&alg, &lam, &c), oracle);
            assert_eq!(oracle, frac(x * (x + 1), 2));
        }
    }

    #[test]
    fn casimir_eigenvalue_oracle_n2() {
        let alg = Algebra::build(2).unwrap();
        let c = casimir(&alg);
        for (x, y) in [(0i64, 0i64), (1, -2), (3, 5), (-4, 7)] {
            let lam = Weight {
                eps: alloc::vec![rat(x), rat(y)],
            };
            let two_rho = alg.rho().add(&alg.rho());
            let oracle = lam.form(&lam.add(&two_rho));
            assert_eq!(central_character(&alg, &lam, &c), oracle);
        }
    }

    #[test]
    fn casimir_shape() {
        let alg = n1();
        let c = casimir(&alg);
        assert_eq!(c.filtration_degree(), 2);
        for m in c.terms().keys() {
            assert_eq!(m.weight(&alg), alloc::vec![0]);
        }
    }

    #[test]
    fn even_casimir_is_not_central_in_full_algebra() {
        let alg = n1();
        let q = casimir_even(&alg);
        let x = LieElement::basis(alg.alpha_n());
        assert!(!adjoint(&alg, &x, &q).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_solves() {
        let alg = n1();
        assert_eq!(compute_center(&alg, 0).dim(), 1);
        assert_eq!(compute_anticenter(&alg, 0).dim(), 0);
    }

    #[test]
    fn degree_two_solves_n1() {
        let alg = n1();
        let z = compute_center(&alg, 2);
        assert_eq!(z.dim(), 2);
        let a = compute_anticenter(&alg, 2);
        assert_eq!(a.dim(), 1);
        // The center at degree 2 is spanned by 1 and C.
        let c = casimir(&alg);
        let maps: Vec<_> = z.elements.iter().map(UEAElement::terms).collect();
        let c_and_one = [UEAElement::one(), c];
        let maps2: Vec<_> = c_and_one.iter().map(UEAElement::terms).collect();
        assert!(spans_equal(&maps, &maps2));
    }

    #[test]
    fn ghost_structure_n1() {
        let alg = n1();
        let gc = GhostCenter::compute(&alg, 2).unwrap();
        assert_eq!(gc.basis().len(), 3);
        // (σ∘η)(T) = h_1.
        assert_eq!(hc_image(&alg, &gc.t), HCPolynomial::var(1, 1));
        // T is even and sits in filtration degree 2.
        assert_eq!(gc.t.parity(&alg), Some(crate::osp::Parity::Even));
        assert_eq!(gc.t.filtration_degree(), 2);
    }

    #[test]
    fn ghost_requires_budget() {
        let alg = n1();
        assert!(matches!(
            GhostCenter::compute(&alg, 1),
            Err(CentersError::Ghost(_))
        ));
    }

    #[test]
    fn pinczon_scalars_n1() {
        // Derive (a, b) in T² = a·C + b from the Harish-Chandra oracle and
        // pin the element identities, including T = 2Q − 2C + ½.
        let alg = n1();
        let gc = GhostCenter::compute(&alg, 2).unwrap();
        let c = casimir(&alg);
        let q = casimir_even(&alg);
        let t2 = multiply(&alg, &gc.t, &gc.t);

        // Oracle: solve η(T²) = a·η(C) + b in the polynomial space.
        let eta_t2 = eta(&alg, &t2);
        let eta_c = eta(&alg, &c);
        let pairs: Vec<(Rat, Rat, Rat)> = (0..=2)
            .map(|k| {
                let e = alloc::vec![k as u32];
                (
                    eta_t2.terms().get(&e).cloned().unwrap_or_else(Rat::zero),
                    eta_c.terms().get(&e).cloned().unwrap_or_else(Rat::zero),
                    if k == 0 { Rat::one() } else { Rat::zero() },
                )
            })
            .collect();
        let rows: alloc::vec::Vec<alloc::vec::Vec<Rat>> =
            pairs.iter().map(|(t, _, _)| alloc::vec![t.clone()]).collect();
        let basis: alloc::vec::Vec<alloc::vec::Vec<Rat>> = alloc::vec![
            pairs.iter().map(|(_, c, _)| c.clone()).collect(),
            pairs.iter().map(|(_, _, u)| u.clone()).collect(),
        ];
        let target: alloc::vec::Vec<Rat> = rows.into_iter().map(|r| r[0].clone()).collect();
        let sol = in_span(&target, &basis).unwrap().expect("T² ∈ span{C, 1}");
        assert_eq!(sol, alloc::vec![rat(2), frac(1, 4)]);

        // Element identities.
        let expected_t2 = c.scaled(&rat(2)).plus(&UEAElement::scalar(frac(1, 4)));
        assert_eq!(t2, expected_t2);
        let expected_t = q
            .scaled(&rat(2))
            .minus(&c.scaled(&rat(2)))
            .plus(&UEAElement::scalar(frac(1, 2)));
        assert_eq!(gc.t, expected_t);
    }
}
