//! Yang–Baxter operators in twisted tensor products.
//!
//! A candidate is a coefficient function `f: G -> Q(zeta_M)` defining
//! `r = sum_g f(g) g` in the base algebra. The braid check builds
//! `r_1, r_2` in `A_3(G, tau)` and tests `r_1 r_2 r_1 = r_2 r_1 r_2`
//! exactly. Unitarity is decided projectively (`r* r = c`, `c > 0`) so no
//! square roots are ever adjoined; the optional exact normalizer is kept
//! separate and only folded in where it exists in the coefficient field.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::cyclo::CycNum;
use crate::groups::{BaseAlgebra, Bihomomorphism, FiniteGroup};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ttp::{Element, TTPAlgebra};
use crate::{Error, Result};

/// `r = sum_g f(g) g` with an optional exact normalizer `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YboCandidate {
    pub base: BaseAlgebra,
    /// total coefficient table indexed by element id (zeros kept)
    pub coeffs: Vec<CycNum>,
    /// exact scalar making `gamma * r` unitary/finite-order, when one exists
    /// in a cyclotomic field (e.g. 1/(1+i) or 1/2); braid checks ignore it
    pub normalizer: Option<CycNum>,
}

impl YboCandidate {
    pub fn new(base: BaseAlgebra, coeffs: Vec<CycNum>) -> Self {
        assert_eq!(coeffs.len(), base.order());
        YboCandidate {
            base,
            coeffs,
            normalizer: None,
        }
    }

    pub fn with_normalizer(mut self, gamma: CycNum) -> Self {
        self.normalizer = Some(gamma);
        self
    }

    /// The unnormalized Gaussian `f(j) = q^{j^2}` on `Z_p`.
    pub fn gaussian(p: u32) -> Self {
        let base = BaseAlgebra::plain(FiniteGroup::cyclic(p));
        let coeffs = (0..p)
            .map(|j| CycNum::root_of_unity(p, (j as i64 * j as i64) % p as i64))
            .collect();
        YboCandidate::new(base, coeffs)
    }

    /// Smallest modulus containing the twist, the cocycle and every
    /// coefficient.
    pub fn working_modulus(&self, alpha: &Bihomomorphism) -> u32 {
        let mut m = alpha.modulus.lcm(&self.base.cocycle_modulus());
        for c in &self.coeffs {
            m = m.lcm(&c.modulus());
        }
        if let Some(g) = &self.normalizer {
            m = m.lcm(&g.modulus());
        }
        m
    }

    /// Support of the coefficient function.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, _)| g)
            .collect()
    }

    /// Coefficients with the normalizer folded in (identity if none).
    pub fn normalized_coeffs(&self) -> Result<Vec<CycNum>> {
        match &self.normalizer {
            None => Ok(self.coeffs.clone()),
            Some(g) => {
                let mut m = g.modulus();
                for c in &self.coeffs {
                    m = m.lcm(&c.modulus());
                }
                let g = g.lift(m)?;
                self.coeffs.iter().map(|c| c.lift(m)?.mul(&g)).collect()
            }
        }
    }

    /// `r` as an element of slot `position` of `alg`.
    pub fn slot_element(&self, alg: &Arc<TTPAlgebra>, position: usize) -> Result<Element> {
        alg.slot_element(&self.coeffs, position)
    }
}

/// Verification summary for one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub braid_ok: bool,
    pub invertible: bool,
    /// `c` with `r* r = c * 1`, if the product is a positive real scalar
    pub unitary_scalar: Option<CycNum>,
    /// multiplicative order of the normalized candidate (projective order
    /// of the bare one), when finite and below the cap
    pub order_of_r: Option<u64>,
}

/// Build `A_3(G, tau)` suitable for this candidate.
fn braid_algebra(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<Arc<TTPAlgebra>> {
    TTPAlgebra::new(
        3,
        cand.base.clone(),
        alpha.clone(),
        Some(cand.working_modulus(alpha)),
    )
}

/// Exact test of `r_1 r_2 r_1 = r_2 r_1 r_2` in `A_3(G, tau)`.
pub fn braid_check(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<bool> {
    let alg = braid_algebra(cand, alpha)?;
    let r1 = cand.slot_element(&alg, 1)?;
    let r2 = cand.slot_element(&alg, 2)?;
    let lhs = r1.mul(&r2)?.mul(&r1)?;
    let rhs = r2.mul(&r1)?.mul(&r2)?;
    Ok(lhs == rhs)
}

/// Base algebra `A_2(G, tau)` carrying `r` itself.
pub fn base_algebra_a2(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<Arc<TTPAlgebra>> {
    TTPAlgebra::new(
        2,
        cand.base.clone(),
        alpha.clone(),
        Some(cand.working_modulus(alpha)),
    )
}

/// Invertibility of `r` in the base algebra, by exact rank of the regular
/// representation.
pub fn invertible(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<bool> {
    let a2 = base_algebra_a2(cand, alpha)?;
    let r = cand.slot_element(&a2, 1)?;
    if r.is_zero() {
        return Ok(false);
    }
    let m = r.regular_rep()?;
    Ok(m.rank()? == a2.dim())
}

/// If `r* r` is a scalar `c` with `c` real and positive, return it (then
/// `r / sqrt(c)` is unitary). The normalizer, when present, is folded in.
pub fn projective_unitary(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<Option<CycNum>> {
    let a2 = base_algebra_a2(cand, alpha)?;
    let coeffs = cand.normalized_coeffs()?;
    let r = a2.slot_element(&coeffs, 1)?;
    let prod = r.star()?.mul(&r)?;
    scalar_of(&a2, &prod).map(|opt| {
        opt.filter(|c| {
            // exactness first: c must be conjugation-fixed; then a sign check
            c.conj() == *c && c.embed(30).is_positive_real()
        })
    })
}

/// If `x = c * 1`, return `Some(c)`; `None` otherwise.
fn scalar_of(alg: &Arc<TTPAlgebra>, x: &Element) -> Result<Option<CycNum>> {
    if x.is_zero() {
        return Ok(Some(CycNum::zero(alg.cyc_modulus())));
    }
    if x.num_terms() != 1 {
        return Ok(None);
    }
    let (mono, c) = x.terms().iter().next().unwrap();
    if *mono == alg.identity_monomial() {
        Ok(Some(c.clone()))
    } else {
        Ok(None)
    }
}

/// Multiplicative order of the candidate in the base algebra: the exact
/// order of `gamma r` when a normalizer is present, otherwise the projective
/// order (smallest k with `r^k` scalar).
pub fn order_of_r(cand: &YboCandidate, alpha: &Bihomomorphism, cap: u64) -> Result<Option<u64>> {
    let a2 = base_algebra_a2(cand, alpha)?;
    let coeffs = cand.normalized_coeffs()?;
    let r = a2.slot_element(&coeffs, 1)?;
    let mut acc = r.clone();
    for k in 1..=cap {
        let stop = if cand.normalizer.is_some() {
            scalar_of(&a2, &acc)?.map(|c| c.is_one()).unwrap_or(false)
        } else {
            scalar_of(&a2, &acc)?.map(|c| !c.is_zero()).unwrap_or(false)
        };
        if stop {
            return Ok(Some(k));
        }
        acc = acc.mul(&r)?;
    }
    Ok(None)
}

/// Full verification pipeline for one candidate.
pub fn verify_candidate(
    cand: &YboCandidate,
    alpha: &Bihomomorphism,
    order_cap: Option<u64>,
) -> Result<VerificationReport> {
    let braid_ok = braid_check(cand, alpha)?;
    let invertible = invertible(cand, alpha)?;
    let unitary_scalar = projective_unitary(cand, alpha)?;
    let order_of_r = match order_cap {
        Some(cap) => order_of_r(cand, alpha, cap)?,
        None => None,
    };
    Ok(VerificationReport {
        braid_ok,
        invertible,
        unitary_scalar,
        order_of_r,
    })
}

/// The six solution symmetries of `(A_n(G, tau), r)`.
#[derive(Clone, Debug)]
pub enum SymmetryAction {
    /// global rescale `f -> z f` (braid equation is homogeneous)
    Scale(CycNum),
    /// character rescale with exponents mod `modulus`: `f(g) -> f(g) zeta^{s(g)}`
    Character { modulus: u32, exponents: Vec<u32> },
    /// alpha-preserving automorphism as an element permutation:
    /// `f -> f o psi^{-1}`
    Automorphism(Vec<usize>),
    /// coefficient-wise Galois `zeta -> zeta^s`. Semilinear: carries
    /// solutions for `alpha` to solutions for `s * alpha`.
    Galois(i64),
    /// Galois composed with a compensating relabeling,
    /// `f(h) -> sigma_s(f(psi(h)))`. A fixed-form solution symmetry whenever
    /// `s * alpha(psi x, psi y) = alpha(x, y)`.
    GaloisWithAutomorphism { s: i64, psi: Vec<usize> },
    /// `f(g) -> f(g^{-1})`; abelian bases only
    SupportInversion,
    /// `f -> conj(f)`; abelian bases only
    Conjugation,
}

/// Apply a symmetry to a candidate. If the input passes the braid check,
/// the output passes it too — against the same `alpha` for every action
/// except `Galois(s)`, which conjugates the form to `s * alpha`.
pub fn symmetry_apply(cand: &YboCandidate, action: &SymmetryAction) -> Result<YboCandidate> {
    let group = &cand.base.group;
    let n = group.order();
    match action {
        SymmetryAction::Scale(z) => {
            let coeffs = cand
                .coeffs
                .iter()
                .map(|c| c.mul(z))
                .collect::<Result<Vec<_>>>()?;
            let mut out = YboCandidate::new(cand.base.clone(), coeffs);
            // |z| = 1 keeps the normalizer valid
            if let Some(g) = &cand.normalizer {
                if z.conj().mul(z)?.is_one() {
                    out.normalizer = Some(g.clone());
                }
            }
            Ok(out)
        }
        SymmetryAction::Character { modulus, exponents } => {
            crate::ttp::validate_character(group, exponents, *modulus)?;
            let coeffs = cand
                .coeffs
                .iter()
                .enumerate()
                .map(|(g, c)| {
                    c.mul(&CycNum::root_of_unity(*modulus, exponents[g] as i64))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer: cand.normalizer.clone(),
            })
        }
        SymmetryAction::Automorphism(psi) => {
            if psi.len() != n {
                return Err(Error::NotFormAutomorphism);
            }
            let mut coeffs = vec![CycNum::zero(1); n];
            for g in 0..n {
                coeffs[psi[g]] = cand.coeffs[g].clone();
            }
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer: cand.normalizer.clone(),
            })
        }
        SymmetryAction::Galois(s) => {
            let coeffs = cand
                .coeffs
                .iter()
                .map(|c| c.galois(*s))
                .collect::<Result<Vec<_>>>()?;
            let normalizer = match &cand.normalizer {
                Some(g) => Some(g.galois(*s)?),
                None => None,
            };
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer,
            })
        }
        SymmetryAction::GaloisWithAutomorphism { s, psi } => {
            if psi.len() != n {
                return Err(Error::NotFormAutomorphism);
            }
            let coeffs = (0..n)
                .map(|h| cand.coeffs[psi[h]].galois(*s))
                .collect::<Result<Vec<_>>>()?;
            let normalizer = match &cand.normalizer {
                Some(g) => Some(g.galois(*s)?),
                None => None,
            };
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer,
            })
        }
        SymmetryAction::SupportInversion => {
            if !group.is_abelian() {
                return Err(Error::InvalidAction(
                    "support inversion needs an abelian base".into(),
                ));
            }
            let mut coeffs = vec![CycNum::zero(1); n];
            for g in 0..n {
                coeffs[g] = cand.coeffs[group.inv(g)].clone();
            }
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer: cand.normalizer.clone(),
            })
        }
        SymmetryAction::Conjugation => {
            if !group.is_abelian() {
                return Err(Error::InvalidAction(
                    "coefficient conjugation needs an abelian base".into(),
                ));
            }
            let coeffs = cand.coeffs.iter().map(|c| c.conj()).collect();
            let normalizer = cand.normalizer.as_ref().map(|g| g.conj());
            Ok(YboCandidate {
                base: cand.base.clone(),
                coeffs,
                normalizer,
            })
        }
    }
}

/// The form a Galois action carries `alpha` to: `s * alpha`.
pub fn galois_twisted_form(alpha: &Bihomomorphism, s: i64, group: &FiniteGroup) -> Result<Bihomomorphism> {
    let m = alpha.modulus;
    let sm = s.rem_euclid(m as i64) as u32;
    Bihomomorphism::from_fn(group, m, |g, h| (alpha.eval(g, h) * sm) % m)
}

/// Exact check of the Gaussian conjugation relations in `A_3(Z_p)`:
/// `r_1 u_2 r_1^{-1} = q u_1^{-1} u_2` and `r_2 u_1 r_2^{-1} = q^{-1} u_1 u_2`,
/// verified multiplicatively (`r_1 u_2 = q u_1^{-1} u_2 r_1`, etc.) so no
/// inverse is needed; the normalizer cancels in conjugation anyway.
pub fn gaussian_conjugation_check(p: u32) -> Result<bool> {
    if !crate::groups::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let cand = YboCandidate::gaussian(p);
    let alpha = Bihomomorphism::zp_two_xy(p)?;
    let alg = braid_algebra(&cand, &alpha)?;
    let r1 = cand.slot_element(&alg, 1)?;
    let r2 = cand.slot_element(&alg, 2)?;
    let u1 = alg.generator(1, 1)?;
    let u2 = alg.generator(1, 2)?;
    let u1_inv = alg.generator(p as usize - 1, 1)?;
    let q = alg.q_power(1);
    let q_inv = alg.q_power(p - 1);
    // r_1 u_2 = q u_1^{-1} u_2 r_1
    let lhs1 = r1.mul(&u2)?;
    let rhs1 = u1_inv.mul(&u2)?.mul(&r1)?.scale(&q)?;
    // r_2 u_1 = q^{-1} u_1 u_2 r_2
    let lhs2 = r2.mul(&u1)?;
    let rhs2 = u1.mul(&u2)?.mul(&r2)?.scale(&q_inv)?;
    Ok(lhs1 == rhs1 && lhs2 == rhs2)
}

/// Local representation of `A_n(Z_p)` on `V^{tensor n}`, `V = C^p`:
/// `U(e_i ⊗ e_j) = q^{j-i} e_{i+1} ⊗ e_{j+1}` and `u_i` acts as `U` on the
/// adjacent factors `(i, i+1)`.
pub struct Localization {
    pub p: u32,
    /// the p^2 x p^2 matrix `R = sum_j f(j) U^j`
    pub r_matrix: SparseMatrix,
    pub ybe_holds: bool,
    pub representation_ok: bool,
}

/// Build `R = sum_j f(j) U^j` and verify both the matrix Yang–Baxter
/// equation on `V^{⊗3}` and that `u_i -> U_{i,i+1}` respects the defining
/// relations of the algebra.
pub fn localize_zp(cand: &YboCandidate, alpha: &Bihomomorphism) -> Result<Localization> {
    let group = &cand.base.group;
    let p = match group {
        FiniteGroup::Abelian(a) if a.rank() == 1 => a.factors()[0],
        _ => {
            return Err(Error::UnsupportedBase(
                "localization needs the cyclic base Z_p".into(),
            ))
        }
    };
    if !crate::groups::is_prime(p) || p == 2 {
        return Err(Error::UnsupportedBase("localization needs odd prime p".into()));
    }
    if cand.base.cocycle.is_some() || alpha.eval(1, 1) != 2 % p || alpha.modulus != p {
        return Err(Error::UnsupportedBase(
            "localization needs the twist alpha(x,y) = 2xy on Z_p".into(),
        ));
    }
    let m = cand.working_modulus(alpha);
    let np = p as usize;
    let dim2 = np * np;
    // U^j (e_i ⊗ e_k) = q^{j(k-i)} e_{i+j} ⊗ e_{k+j}
    let u_pow = |j: usize| -> SparseMatrix {
        let mut u = SparseMatrix::zero(dim2, m);
        let scale = (m / p) as i64;
        for i in 0..np {
            for k in 0..np {
                let col = i * np + k;
                let row = ((i + j) % np) * np + ((k + j) % np);
                let e = (j as i64 * (k as i64 - i as i64)).rem_euclid(p as i64) * scale;
                u.push(row, col, CycNum::root_of_unity(m, e));
            }
        }
        u
    };
    let mut r = SparseMatrix::zero(dim2, m);
    for (j, c) in cand.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        r = r.add(&u_pow(j).scale(&c.lift(m)?)?)?;
    }
    let id_p = SparseMatrix::identity(np, m);
    let r12 = r.kron(&id_p)?;
    let r23 = id_p.kron(&r)?;
    let lhs = r12.mul(&r23)?.mul(&r12)?;
    let rhs = r23.mul(&r12)?.mul(&r23)?;
    let ybe_holds = lhs.eq_canonical(&rhs);
    // representation check: U_{12} U_{23} = q^2 U_{23} U_{12} and U^p = 1
    let u = u_pow(1);
    let u12 = u.kron(&id_p)?;
    let u23 = id_p.kron(&u)?;
    let q2 = CycNum::root_of_unity(m, 2 * (m / p) as i64);
    let rel1 = u12
        .mul(&u23)?
        .eq_canonical(&u23.mul(&u12)?.scale(&q2)?);
    let mut upow = SparseMatrix::identity(dim2, m);
    for _ in 0..p {
        upow = upow.mul(&u)?;
    }
    let rel2 = upow.eq_canonical(&SparseMatrix::identity(dim2, m));
    Ok(Localization {
        p,
        r_matrix: r,
        ybe_holds,
        representation_ok: rel1 && rel2,
    })
}

/// Outcome of the braid-image closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageOrder {
    Finite(u64),
    CapExceeded,
}

/// Order of the group generated by the regular representations of
/// `r_1, ..., r_{n-1}` in `A_n(G, tau)`, computed projectively: matrices
/// are canonicalized by scaling the first nonzero entry (in basis order)
/// to 1, and the set is closed under multiplication until stable or until
/// `cap` distinct elements are seen.
pub fn projective_image_order(
    cand: &YboCandidate,
    alpha: &Bihomomorphism,
    strands: usize,
    cap: u64,
) -> Result<ImageOrder> {
    let alg = TTPAlgebra::new(
        strands,
        cand.base.clone(),
        alpha.clone(),
        Some(cand.working_modulus(alpha)),
    )?;
    let mut gens: Vec<Matrix> = Vec::new();
    for i in 1..strands {
        let ri = cand.slot_element(&alg, i)?;
        gens.push(ri.regular_rep()?.projective_canonical()?);
    }
    let mut seen: HashMap<Vec<CycNum>, ()> = HashMap::new();
    let mut queue: VecDeque<Matrix> = VecDeque::new();
    for g in &gens {
        if seen.insert(g.data().to_vec(), ()).is_none() {
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g)?.projective_canonical()?;
            if seen.insert(y.data().to_vec(), ()).is_none() {
                if seen.len() as u64 > cap {
                    return Ok(ImageOrder::CapExceeded);
                }
                queue.push_back(y);
            }
        }
    }
    Ok(ImageOrder::Finite(seen.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ZmMatrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn z3_candidate(a: CycNum, b: CycNum) -> YboCandidate {
        let base = BaseAlgebra::plain(FiniteGroup::cyclic(3));
        YboCandidate::new(base, vec![CycNum::one(3), a, b])
    }

    #[test]
    fn z3_braid_examples() {
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        // f = (1, q, q): a^3 = b^3 = 1 and a^2 != b
        let q = CycNum::root_of_unity(3, 1);
        let cand = z3_candidate(q.clone(), q.clone());
        assert!(braid_check(&cand, &alpha).unwrap());
        assert!(invertible(&cand, &alpha).unwrap());
        // r = 1 trivially braids
        let trivial = YboCandidate::new(
            BaseAlgebra::plain(FiniteGroup::cyclic(3)),
            vec![CycNum::one(3), CycNum::zero(3), CycNum::zero(3)],
        );
        assert!(braid_check(&trivial, &alpha).unwrap());
        assert!(invertible(&trivial, &alpha).unwrap());
        // f = (1, 1, 1) is the group-sum projector direction: not invertible
        let proj = z3_candidate(CycNum::one(3), CycNum::one(3));
        assert!(!invertible(&proj, &alpha).unwrap());
        // a^2 = b violates the solution condition
        let bad = z3_candidate(q.clone(), q.mul(&q).unwrap());
        assert!(!invertible(&bad, &alpha).unwrap() || !braid_check(&bad, &alpha).unwrap());
    }

    #[test]
    fn determinant_against_circulant_oracle() {
        // det of the circulant (1, a, b) over Z_3 is prod_k (1 + a w^k + b w^{2k});
        // cross-check the elimination determinant against the closed form.
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        let q = CycNum::root_of_unity(3, 1);
        let cand = z3_candidate(q.clone(), q.clone());
        let a2 = base_algebra_a2(&cand, &alpha).unwrap();
        let det = cand
            .slot_element(&a2, 1)
            .unwrap()
            .regular_rep()
            .unwrap()
            .det()
            .unwrap();
        let w = CycNum::root_of_unity(3, 1);
        let mut expected = CycNum::one(3);
        for k in 0..3i64 {
            let wk = w.pow(k as u64).unwrap();
            let w2k = w.pow((2 * k) as u64).unwrap();
            let term = CycNum::one(3)
                .add(&q.mul(&wk).unwrap())
                .unwrap()
                .add(&q.mul(&w2k).unwrap())
                .unwrap();
            expected = expected.mul(&term).unwrap();
        }
        assert_eq!(det, expected);
        assert!(!det.is_zero());
    }

    #[test]
    fn gaussian_is_projectively_unitary() {
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        let cand = YboCandidate::gaussian(3);
        assert!(braid_check(&cand, &alpha).unwrap());
        let c = projective_unitary(&cand, &alpha).unwrap().unwrap();
        assert_eq!(c, CycNum::from_integer(3, 3));
        // r = 1: c = 1
        let trivial = YboCandidate::new(
            BaseAlgebra::plain(FiniteGroup::cyclic(3)),
            vec![CycNum::one(3), CycNum::zero(3), CycNum::zero(3)],
        );
        assert_eq!(
            projective_unitary(&trivial, &alpha).unwrap().unwrap(),
            CycNum::one(3)
        );
    }

    #[test]
    fn q8_candidate_verifies() {
        let base = BaseAlgebra::quaternion();
        let g = base.group.clone();
        let alpha =
            Bihomomorphism::from_matrix(&g, 2, ZmMatrix::new(2, 2, vec![0, 1, 1, 0])).unwrap();
        let half = CycNum::from_rational(4, rat(1, 2));
        let cand = YboCandidate::new(
            base,
            vec![half.clone(), half.clone(), half.clone(), half.clone()],
        );
        assert!(braid_check(&cand, &alpha).unwrap());
        let c = projective_unitary(&cand, &alpha).unwrap().unwrap();
        assert!(c.is_one());
        assert!(invertible(&cand, &alpha).unwrap());
    }

    #[test]
    fn symmetry_actions_preserve_braid() {
        let alpha = Bihomomorphism::zp_two_xy(5).unwrap();
        let cand = YboCandidate::gaussian(5);
        assert!(braid_check(&cand, &alpha).unwrap());
        // character: f(j) = q^{j^2 + sj}
        let s = 3u32;
        let chi: Vec<u32> = (0..5).map(|j| (s * j) % 5).collect();
        let rescaled = symmetry_apply(
            &cand,
            &SymmetryAction::Character {
                modulus: 5,
                exponents: chi,
            },
        )
        .unwrap();
        assert!(braid_check(&rescaled, &alpha).unwrap());
        for (j, c) in rescaled.coeffs.iter().enumerate() {
            let e = (j * j + s as usize * j) % 5;
            assert_eq!(c, &CycNum::root_of_unity(5, e as i64));
        }
        // conjugation: f(j) = q^{-j^2}
        let conj = symmetry_apply(&cand, &SymmetryAction::Conjugation).unwrap();
        assert!(braid_check(&conj, &alpha).unwrap());
        assert_eq!(conj.coeffs[1], CycNum::root_of_unity(5, -1));
        // support inversion
        let inv = symmetry_apply(&cand, &SymmetryAction::SupportInversion).unwrap();
        assert!(braid_check(&inv, &alpha).unwrap());
        // automorphism x -> -x preserves alpha = 2xy
        let psi: Vec<usize> = (0..5).map(|x| (5 - x) % 5).collect();
        let auted = symmetry_apply(&cand, &SymmetryAction::Automorphism(psi)).unwrap();
        assert!(braid_check(&auted, &alpha).unwrap());
        // global scale
        let scaled = symmetry_apply(&cand, &SymmetryAction::Scale(CycNum::from_integer(5, 7)))
            .unwrap();
        assert!(braid_check(&scaled, &alpha).unwrap());
        // identity action: scaling by one
        let same = symmetry_apply(&cand, &SymmetryAction::Scale(CycNum::one(5))).unwrap();
        assert_eq!(same.coeffs, cand.coeffs);
    }

    #[test]
    fn galois_action_conjugates_the_form() {
        // sigma_s carries solutions for alpha to solutions for s*alpha; for
        // a non-square s mod 5 the image is NOT a solution for alpha itself.
        let alpha = Bihomomorphism::zp_two_xy(5).unwrap();
        let group = FiniteGroup::cyclic(5);
        let cand = YboCandidate::gaussian(5);
        let twisted = symmetry_apply(&cand, &SymmetryAction::Galois(2)).unwrap();
        let alpha2 = galois_twisted_form(&alpha, 2, &group).unwrap();
        assert!(braid_check(&twisted, &alpha2).unwrap());
        assert!(!braid_check(&twisted, &alpha).unwrap());
        // s = -1 agrees with coefficient conjugation and stays a solution
        let conj = symmetry_apply(&cand, &SymmetryAction::Galois(-1)).unwrap();
        assert!(braid_check(&conj, &alpha).unwrap());
    }

    #[test]
    fn conjugation_relations_small_primes() {
        for p in [3, 5, 7] {
            assert!(gaussian_conjugation_check(p).unwrap(), "p = {}", p);
        }
    }

    #[test]
    fn localization_gaussian_p3() {
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        let cand = YboCandidate::gaussian(3);
        let loc = localize_zp(&cand, &alpha).unwrap();
        assert_eq!(loc.r_matrix.n(), 9);
        assert!(loc.ybe_holds);
        assert!(loc.representation_ok);
        // identity indicator: R = I, YBE trivially
        let trivial = YboCandidate::new(
            BaseAlgebra::plain(FiniteGroup::cyclic(3)),
            vec![CycNum::one(3), CycNum::zero(3), CycNum::zero(3)],
        );
        let loc2 = localize_zp(&trivial, &alpha).unwrap();
        assert!(loc2.ybe_holds);
        assert!(loc2
            .r_matrix
            .eq_canonical(&SparseMatrix::identity(9, 3)));
    }

    #[test]
    fn image_order_trivial_and_cap() {
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        let trivial = YboCandidate::new(
            BaseAlgebra::plain(FiniteGroup::cyclic(3)),
            vec![CycNum::one(3), CycNum::zero(3), CycNum::zero(3)],
        );
        assert_eq!(
            projective_image_order(&trivial, &alpha, 3, 10).unwrap(),
            ImageOrder::Finite(1)
        );
        let cand = YboCandidate::gaussian(3);
        assert_eq!(
            projective_image_order(&cand, &alpha, 3, 1).unwrap(),
            ImageOrder::CapExceeded
        );
    }

    #[test]
    fn order_of_normalized_candidates() {
        // (1+u+v+uv)/2 in the quaternion base has order 6... computed below;
        // what matters here: with the normalizer folded in the order is exact
        let base = BaseAlgebra::quaternion();
        let g = base.group.clone();
        let alpha =
            Bihomomorphism::from_matrix(&g, 2, ZmMatrix::new(2, 2, vec![0, 1, 1, 0])).unwrap();
        let one = CycNum::one(4);
        let cand = YboCandidate::new(
            base,
            vec![one.clone(), one.clone(), one.clone(), one.clone()],
        )
        .with_normalizer(CycNum::from_rational(4, rat(1, 2)));
        let k = order_of_r(&cand, &alpha, 64).unwrap().unwrap();
        // r^k = 1 exactly at the reported order
        let a2 = base_algebra_a2(&cand, &alpha).unwrap();
        let r = a2
            .slot_element(&cand.normalized_coeffs().unwrap(), 1)
            .unwrap();
        assert_eq!(r.pow(k).unwrap(), a2.unit());
        for j in 1..k {
            assert_ne!(r.pow(j).unwrap(), a2.unit());
        }
    }
}
