//! The iterated twisted tensor product `A_n(G, tau)`.
//!
//! For `n` strands the algebra has `n-1` tensor slots; a basis is given by
//! monomials `g^(1)_1 ... g^(n-1)_{n-1}` in slot-ascending normal form and
//! the dimension over the coefficient field is `|G|^{n-1}`.
//!
//! Straightening is generated by the ascending relation
//! `g_i h_{i+1} = q^{alpha(g,h)} h_{i+1} g_i`; its descending companion is
//! the formal consequence `g_i h_{i-1} = q^{-alpha(h,g)} h_{i-1} g_i` (note
//! the swapped arguments — this matters for skew forms). Multiplying two
//! normal-form monomials therefore costs one scalar:
//!
//! `(a_1...a_s)(b_1...b_s) = q^{-sum_j alpha(b_j, a_{j+1})} (a_1 b_1)...(a_s b_s)`
//!
//! with the per-slot products taken in the (possibly cocycle-twisted) base
//! algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;

use crate::cyclo::CycNum;
use crate::groups::{BaseAlgebra, Bihomomorphism, ZmMatrix};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// A slot-ascending normal-form monomial: one group element id per slot.
pub type Monomial = Vec<usize>;

#[derive(Debug, PartialEq, Eq)]
pub struct TTPAlgebra {
    strands: usize,
    base: BaseAlgebra,
    alpha: Bihomomorphism,
    /// working cyclotomic modulus M; q = zeta_M^(M / alpha.modulus)
    cyc_modulus: u32,
}

impl TTPAlgebra {
    /// Build `A_n(G, tau)` with `strands = n >= 2`. The working cyclotomic
    /// modulus is the lcm of the twist modulus, the cocycle modulus and
    /// `extra_modulus` (so that external scalars fit in the session field).
    pub fn new(
        strands: usize,
        base: BaseAlgebra,
        alpha: Bihomomorphism,
        extra_modulus: Option<u32>,
    ) -> Result<Arc<Self>> {
        if strands < 2 {
            return Err(Error::UnsupportedBase("need at least 2 strands".into()));
        }
        if base.group.exponent() % alpha.modulus != 0 {
            return Err(Error::NotBihomomorphism(
                "twist modulus does not divide the group exponent".into(),
            ));
        }
        let mut m = alpha.modulus.lcm(&base.cocycle_modulus());
        if let Some(x) = extra_modulus {
            m = m.lcm(&x);
        }
        Ok(Arc::new(TTPAlgebra {
            strands,
            base,
            alpha,
            cyc_modulus: m,
        }))
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn slots(&self) -> usize {
        self.strands - 1
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.base
    }

    pub fn alpha(&self) -> &Bihomomorphism {
        &self.alpha
    }

    pub fn cyc_modulus(&self) -> u32 {
        self.cyc_modulus
    }

    pub fn dim(&self) -> usize {
        self.base.order().pow(self.slots() as u32)
    }

    /// q^e as an element of Q(zeta_M).
    pub fn q_power(&self, e: u32) -> CycNum {
        let scale = self.cyc_modulus / self.alpha.modulus;
        CycNum::root_of_unity(
            self.cyc_modulus,
            (e % self.alpha.modulus) as i64 * scale as i64,
        )
    }

    fn cocycle_root(&self, g: usize, h: usize) -> Option<i64> {
        self.base.cocycle.as_ref().map(|nu| {
            let scale = (self.cyc_modulus / nu.modulus) as i64;
            (nu.eval(g, h) % nu.modulus) as i64 * scale
        })
    }

    pub fn identity_monomial(&self) -> Monomial {
        vec![self.base.group.identity(); self.slots()]
    }

    /// Normal-form product of two basis monomials: exponent of zeta_M plus
    /// the resulting monomial.
    pub fn mono_mul(&self, a: &[usize], b: &[usize]) -> (i64, Monomial) {
        let s = self.slots();
        let m_alpha = self.alpha.modulus as i64;
        let q_scale = (self.cyc_modulus / self.alpha.modulus) as i64;
        let mut exp: i64 = 0;
        // straightening scalar: q^{-alpha(b_j, a_{j+1})} per adjacent pair
        for j in 0..s.saturating_sub(1) {
            let v = self.alpha.eval(b[j], a[j + 1]) as i64;
            exp += (m_alpha - v % m_alpha) % m_alpha * q_scale;
        }
        let mut mono = Vec::with_capacity(s);
        for j in 0..s {
            if let Some(root) = self.cocycle_root(a[j], b[j]) {
                exp += root;
            }
            mono.push(self.base.group.mul(a[j], b[j]));
        }
        (exp.rem_euclid(self.cyc_modulus as i64), mono)
    }

    /// Index of a monomial in the canonical (lexicographic) basis order.
    pub fn mono_index(&self, mono: &[usize]) -> usize {
        let n = self.base.order();
        mono.iter().fold(0usize, |acc, &g| acc * n + g)
    }

    pub fn mono_at(&self, mut idx: usize) -> Monomial {
        let n = self.base.order();
        let s = self.slots();
        let mut mono = vec![0usize; s];
        for i in (0..s).rev() {
            mono[i] = idx % n;
            idx /= n;
        }
        mono
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element {
            algebra: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(self: &Arc<Self>) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(self.identity_monomial(), CycNum::one(self.cyc_modulus));
        Element {
            algebra: self.clone(),
            terms,
        }
    }

    pub fn monomial_elem(self: &Arc<Self>, mono: Monomial, coeff: CycNum) -> Result<Element> {
        let mut e = self.zero();
        e.add_term(mono, coeff.lift(self.cyc_modulus)?)?;
        Ok(e)
    }

    /// The generator `g_i`: group element `g` in slot `i` (1-based),
    /// identity elsewhere.
    pub fn generator(self: &Arc<Self>, g: usize, position: usize) -> Result<Element> {
        if position == 0 || position > self.slots() {
            return Err(Error::PositionOutOfRange(position, self.slots()));
        }
        let mut mono = self.identity_monomial();
        mono[position - 1] = g;
        self.monomial_elem(mono, CycNum::one(self.cyc_modulus))
    }

    /// `sum_g f(g) g_position` for a coefficient table indexed by element id.
    pub fn slot_element(self: &Arc<Self>, coeffs: &[CycNum], position: usize) -> Result<Element> {
        if position == 0 || position > self.slots() {
            return Err(Error::PositionOutOfRange(position, self.slots()));
        }
        let mut e = self.zero();
        for (g, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = self.identity_monomial();
            mono[position - 1] = g;
            e.add_term(mono, c.lift(self.cyc_modulus)?)?;
        }
        Ok(e)
    }
}

/// A sparse element of `A_n(G, tau)`: normal-form monomials with nonzero
/// cyclotomic coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    algebra: Arc<TTPAlgebra>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Element {
    pub fn algebra(&self) -> &Arc<TTPAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: Monomial, coeff: CycNum) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&mono) {
            Some(cur) => {
                let s = cur.add(&coeff)?;
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
        Ok(())
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (mono, c) in other.terms.iter() {
            out.add_term(mono.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (mono, c) in other.terms.iter() {
            out.add_term(mono.clone(), c.neg())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Result<Element> {
        let s = s.lift(self.algebra.cyc_modulus)?;
        let mut out = self.algebra.zero();
        for (mono, c) in self.terms.iter() {
            out.add_term(mono.clone(), c.mul(&s)?)?;
        }
        Ok(out)
    }

    /// Product in normal form, straightening every monomial pair.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        let alg = &self.algebra;
        let mut out = alg.zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                let (exp, mono) = alg.mono_mul(ma, mb);
                let coeff = ca.mul(cb)?.mul_root(exp);
                out.add_term(mono, coeff)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Element> {
        let mut acc = self.algebra.unit();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The star antiautomorphism: `g_i^* = g_i^{-1}` (cocycle-corrected in a
    /// twisted base), `q^* = 1/q`, conjugate-linear on coefficients.
    pub fn star(&self) -> Result<Element> {
        let alg = &self.algebra;
        let group = &alg.base.group;
        let m = alg.cyc_modulus;
        let mut out = alg.zero();
        for (mono, c) in self.terms.iter() {
            // reversed product of the slot-wise inverses
            let mut exp: i64 = 0;
            let mut acc = alg.identity_monomial();
            for i in (0..alg.slots()).rev() {
                let g = mono[i];
                if g == group.identity() {
                    continue;
                }
                let ginv = group.inv(g);
                let mut single = alg.identity_monomial();
                single[i] = ginv;
                // the basis inverse in a twisted base costs nu(g, g^{-1})^{-1}
                if let Some(root) = alg.cocycle_root(g, ginv) {
                    exp -= root;
                }
                let (e2, next) = alg.mono_mul(&acc, &single);
                exp += e2;
                acc = next;
            }
            let coeff = c.conj().mul_root(exp.rem_euclid(m as i64));
            out.add_term(acc, coeff)?;
        }
        Ok(out)
    }

    /// Matrix of left multiplication on the canonical monomial basis.
    pub fn regular_rep(&self) -> Result<Matrix> {
        let alg = &self.algebra;
        let dim = alg.dim();
        let mut mat = Matrix::zero(dim, dim, alg.cyc_modulus);
        for col in 0..dim {
            let b = alg.mono_at(col);
            for (ma, ca) in self.terms.iter() {
                let (exp, mono) = alg.mono_mul(ma, &b);
                let row = alg.mono_index(&mono);
                let v = mat.at(row, col).add(&ca.mul_root(exp))?;
                mat.set(row, col, v);
            }
        }
        Ok(mat)
    }
}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let group = &self.algebra.base.group;
        let mut first = true;
        for (mono, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let labels: Vec<String> = mono.iter().map(|&g| group.label(g)).collect();
            write!(f, "[{}]*({})", labels.join("|"), c)?;
        }
        Ok(())
    }
}

/// Lifted algebra (or semilinear) maps applied term-wise.
pub enum ElementMap<'a> {
    /// `g_i -> g_i^{-1}` on every slot; abelian bases only.
    Inversion,
    /// An alpha-preserving group automorphism, as an element permutation.
    GroupAut(&'a [usize]),
    /// `g_i -> zeta_M^{s(g)} g_i` for a linear character `s: G -> Z_M`.
    Character(&'a [u32]),
    /// Coefficient-wise Galois `zeta_M -> zeta_M^s`. Semilinear; maps
    /// `A_n(G, tau)` onto `A_n(G, tau^s)`.
    Galois(i64),
}

pub fn apply_automorphism(x: &Element, map: &ElementMap) -> Result<Element> {
    let alg = x.algebra().clone();
    let group = &alg.base.group;
    let m = alg.cyc_modulus;
    match map {
        ElementMap::Inversion => {
            if !group.is_abelian() {
                return Err(Error::UnsupportedBase(
                    "inversion lifts to an automorphism only for abelian bases".into(),
                ));
            }
            let mut out = alg.zero();
            for (mono, c) in x.terms().iter() {
                let im: Monomial = mono.iter().map(|&g| group.inv(g)).collect();
                out.add_term(im, c.clone())?;
            }
            Ok(out)
        }
        ElementMap::GroupAut(psi) => {
            validate_automorphism(&alg, psi)?;
            let mut out = alg.zero();
            for (mono, c) in x.terms().iter() {
                let im: Monomial = mono.iter().map(|&g| psi[g]).collect();
                out.add_term(im, c.clone())?;
            }
            Ok(out)
        }
        ElementMap::Character(s) => {
            validate_character(group, s, m)?;
            let mut out = alg.zero();
            for (mono, c) in x.terms().iter() {
                let e: i64 = mono.iter().map(|&g| s[g] as i64).sum();
                out.add_term(mono.clone(), c.mul_root(e))?;
            }
            Ok(out)
        }
        ElementMap::Galois(s) => {
            let mut out = alg.zero();
            for (mono, c) in x.terms().iter() {
                out.add_term(mono.clone(), c.galois(*s)?)?;
            }
            Ok(out)
        }
    }
}

/// Check that `psi` is a group automorphism preserving both the twist and
/// (if present) the base cocycle, so that it lifts slot-wise.
pub fn validate_automorphism(alg: &TTPAlgebra, psi: &[usize]) -> Result<()> {
    let group = &alg.base.group;
    let n = group.order();
    if psi.len() != n {
        return Err(Error::NotFormAutomorphism);
    }
    let mut seen = vec![false; n];
    for &v in psi.iter() {
        if v >= n || seen[v] {
            return Err(Error::NotFormAutomorphism);
        }
        seen[v] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if psi[group.mul(a, b)] != group.mul(psi[a], psi[b]) {
                return Err(Error::NotFormAutomorphism);
            }
            if alg.alpha.eval(psi[a], psi[b]) != alg.alpha.eval(a, b) {
                return Err(Error::NotFormAutomorphism);
            }
            if let Some(nu) = &alg.base.cocycle {
                if nu.eval(psi[a], psi[b]) != nu.eval(a, b) {
                    return Err(Error::NotFormAutomorphism);
                }
            }
        }
    }
    Ok(())
}

pub fn validate_character(group: &crate::groups::FiniteGroup, s: &[u32], m: u32) -> Result<()> {
    let n = group.order();
    if s.len() != n {
        return Err(Error::NotCharacter("wrong length".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if (s[a] + s[b]) % m != s[group.mul(a, b)] % m {
                return Err(Error::NotCharacter(format!("fails at ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// Basis monomials of the center, found by solving the conjugation
/// congruences slot by slot. Conjugating a monomial `z` by a generator `g`
/// at slot `i` scales it by `q^{alpha(g, z_{i+1}) - alpha(z_{i-1}, g)}`, so
/// centrality is the chain of congruences
/// `alpha(g, z_{i+1}) = alpha(z_{i-1}, g)` for all `g` and all slots `i`
/// (virtual slots 0 and n hold the identity).
pub fn center_basis(alg: &Arc<TTPAlgebra>) -> Result<Vec<Monomial>> {
    let group = &alg.base.group;
    if !group.is_abelian() || alg.base.cocycle.is_some() {
        return Err(Error::UnsupportedBase(
            "center scan needs an abelian, untwisted base".into(),
        ));
    }
    let n = group.order();
    // key vectors over the elements: L(a) = (alpha(g, a))_g, R(a) = (alpha(a, g))_g
    let left_key = |a: usize| -> Vec<u32> { (0..n).map(|g| alg.alpha.eval(g, a)).collect() };
    let right_key = |a: usize| -> Vec<u32> { (0..n).map(|g| alg.alpha.eval(a, g)).collect() };
    let mut by_left: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        by_left.entry(left_key(a)).or_default().push(a);
    }
    let zero_key = vec![0u32; n];
    let mut results: Vec<Monomial> = Vec::new();
    // depth-first assignment: slot i+1 solves L(z_{i+1}) = R(z_{i-1}); the
    // boundary congruence R(z_{s-1}) = 0 is checked at the leaves.
    let mut stack: Vec<Vec<usize>> = group.elements().map(|g| vec![g]).collect();
    let s = alg.slots();
    while let Some(prefix) = stack.pop() {
        if prefix.len() == s {
            let ok = if s >= 2 {
                right_key(prefix[s - 2]) == zero_key
            } else {
                true
            };
            if ok {
                results.push(prefix);
            }
            continue;
        }
        let i = prefix.len();
        let candidates: Vec<usize> = if i == 1 {
            by_left.get(&zero_key).cloned().unwrap_or_default()
        } else {
            by_left.get(&right_key(prefix[i - 2])).cloned().unwrap_or_default()
        };
        for z in candidates {
            let mut next = prefix.clone();
            next.push(z);
            stack.push(next);
        }
    }
    results.sort();
    Ok(results)
}

/// Dimension of the fixed-point subalgebra `C_n` of the lifted inversion,
/// by counting inversion orbits of monomials (not by formula).
pub fn inversion_fixed_dim(alg: &Arc<TTPAlgebra>) -> Result<u64> {
    let group = &alg.base.group;
    if !group.is_abelian() || alg.base.cocycle.is_some() {
        return Err(Error::UnsupportedBase(
            "fixed-point scan needs an abelian, untwisted base".into(),
        ));
    }
    if group.order() % 2 == 0 {
        return Err(Error::UnsupportedBase(
            "even-order base has non-identity self-inverse monomials; unsupported".into(),
        ));
    }
    let dim = alg.dim();
    let mut orbits = 0u64;
    for idx in 0..dim {
        let mono = alg.mono_at(idx);
        let im: Monomial = mono.iter().map(|&g| group.inv(g)).collect();
        if alg.mono_index(&im) >= idx {
            orbits += 1;
        }
    }
    Ok(orbits)
}

/// Multiplication in the central extension `Z_m x G^n` with 2-cocycle
/// `c(g, h) = -sum_i alpha(h_i, g_{i+1})`:
/// `(x, g) (y, h) = (c(g,h) + x + y, gh)`.
pub fn central_extension_mul(
    group: &crate::groups::FiniteGroup,
    alpha: &Bihomomorphism,
    x: (u32, &[usize]),
    y: (u32, &[usize]),
) -> (u32, Vec<usize>) {
    let m = alpha.modulus;
    let c = central_extension_cocycle(alpha, x.1, y.1);
    let exp = (c + x.0 + y.0) % m;
    let prod: Vec<usize> = x
        .1
        .iter()
        .zip(y.1.iter())
        .map(|(&a, &b)| group.mul(a, b))
        .collect();
    (exp, prod)
}

pub fn central_extension_cocycle(alpha: &Bihomomorphism, g: &[usize], h: &[usize]) -> u32 {
    let m = alpha.modulus;
    let mut acc: u32 = 0;
    for i in 0..g.len().saturating_sub(1) {
        let v = alpha.eval(h[i], g[i + 1]) % m;
        acc = (acc + (m - v) % m) % m;
    }
    acc
}

/// Slot-wise substitution realizing `A_n(G, tau_S) ≅ A_n(G, chi)` for a
/// non-degenerate symmetric or skew-symmetric form `S` over `Z_m^k`,
/// `chi(x,y) = q^{x^T y}`. The returned maps `psi_i` satisfy
/// `alpha_S(psi_i g, psi_{i+1} h) = g^T h` on every adjacent slot pair,
/// which is exactly preservation of the straightening relations.
#[derive(Clone, Debug)]
pub struct FormSubstitution {
    pub m: u32,
    pub k: usize,
    /// applied last (outermost): symplectic change of basis, or identity
    uniform: ZmMatrix,
    /// slot i gets power^(i-1)
    power: ZmMatrix,
    odd_post: ZmMatrix,
    even_post: ZmMatrix,
    source: ZmMatrix,
}

impl FormSubstitution {
    /// The substitution matrix for slot `i` (1-based).
    pub fn slot_matrix(&self, i: usize) -> ZmMatrix {
        let post = if i % 2 == 1 {
            &self.odd_post
        } else {
            &self.even_post
        };
        self.uniform.mul(&self.power.pow(i - 1)).mul(post)
    }

    /// Check `alpha_S(psi_i g, psi_{i+1} h) = g^T h` for all generator pairs
    /// on slots `1..=max_slot`.
    pub fn verify(&self, max_slot: usize) -> bool {
        let k = self.k;
        let total = (self.m as u64).pow(k as u32) as usize;
        let decode = |mut idx: usize| -> Vec<u32> {
            let mut v = vec![0u32; k];
            for x in v.iter_mut().rev() {
                *x = (idx % self.m as usize) as u32;
                idx /= self.m as usize;
            }
            v
        };
        for i in 1..max_slot {
            let pi = self.slot_matrix(i);
            let pj = self.slot_matrix(i + 1);
            for gi in 0..total {
                let g = decode(gi);
                for hi in 0..total {
                    let h = decode(hi);
                    let lhs = self.source.bilinear(&pi.matvec(&g), &pj.matvec(&h));
                    let rhs: u64 = g
                        .iter()
                        .zip(h.iter())
                        .map(|(a, b)| *a as u64 * *b as u64)
                        .sum();
                    if lhs != (rhs % self.m as u64) as u32 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Build the normalizing substitution for a symmetric or skew-symmetric
/// non-degenerate `S` over `Z_m` (m odd).
pub fn normalize_form(m: u32, s: &ZmMatrix) -> Result<FormSubstitution> {
    if m % 2 == 0 {
        return Err(Error::EvenModulus(m));
    }
    if s.m != m {
        return Err(Error::NotSymmetricOrSkew);
    }
    if !s.is_invertible() {
        return Err(Error::DegenerateForm(m));
    }
    let k = s.k;
    if s.is_symmetric() {
        // psi_odd = S^{-1}, psi_even = I:
        // alpha(S^{-1} g, h) = g^T (S^{-1})^T S h = g^T h, both parities.
        let sinv = s.inverse().ok_or(Error::DegenerateForm(m))?;
        Ok(FormSubstitution {
            m,
            k,
            uniform: ZmMatrix::identity(m, k),
            power: ZmMatrix::identity(m, k),
            odd_post: sinv,
            even_post: ZmMatrix::identity(m, k),
            source: s.clone(),
        })
    } else if s.is_skew() {
        // change basis to the standard symplectic form T with T^2 = -I, then
        // slot powers T^{i-1} reach eta(x,y) = -x^T y, and the symmetric
        // reduction of -I (odd slots negated) finishes the job.
        let psi = symplectic_basis(m, s)?;
        let t = psi.transpose().mul(s).mul(&psi);
        debug_assert_eq!(t, standard_symplectic(m, k));
        Ok(FormSubstitution {
            m,
            k,
            uniform: psi,
            power: t.clone(),
            odd_post: ZmMatrix::identity(m, k).neg(),
            even_post: ZmMatrix::identity(m, k),
            source: s.clone(),
        })
    } else {
        Err(Error::NotSymmetricOrSkew)
    }
}

fn standard_symplectic(m: u32, k: usize) -> ZmMatrix {
    let half = k / 2;
    let mut a = vec![0u32; k * k];
    for i in 0..half {
        a[i * k + (half + i)] = 1;
        a[(half + i) * k + i] = m - 1;
    }
    ZmMatrix::new(m, k, a)
}

/// Symplectic Gram-Schmidt: returns `Psi` with `Psi^T S Psi` the standard
/// symplectic form. Needs unit pivots (always available for prime m).
fn symplectic_basis(m: u32, s: &ZmMatrix) -> Result<ZmMatrix> {
    let k = s.k;
    if k % 2 != 0 {
        return Err(Error::DegenerateForm(m));
    }
    let pair = |x: &[u32], y: &[u32]| s.bilinear(x, y);
    let mut basis: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..k).map(|j| u32::from(i == j)).collect())
        .collect();
    let mut es: Vec<Vec<u32>> = Vec::new();
    let mut fs: Vec<Vec<u32>> = Vec::new();
    while !basis.is_empty() {
        let e = basis.remove(0);
        let mut partner = None;
        for (idx, w) in basis.iter().enumerate() {
            let v = pair(&e, w);
            if crate::groups::mod_inverse(v, m).is_some() {
                partner = Some((idx, v));
                break;
            }
        }
        let (idx, v) = partner.ok_or(Error::SymplecticPivot)?;
        let w = basis.remove(idx);
        let vinv = crate::groups::mod_inverse(v, m).unwrap();
        let f: Vec<u32> = w
            .iter()
            .map(|&x| ((x as u64 * vinv as u64) % m as u64) as u32)
            .collect();
        // project the remaining vectors into the symplectic complement
        let mut next = Vec::new();
        for v0 in basis.drain(..) {
            // v1 = v0 - B(e, v0) f ; v2 = v1 + B(f, v1) e
            let c1 = pair(&e, &v0);
            let v1: Vec<u32> = v0
                .iter()
                .zip(f.iter())
                .map(|(&a, &b)| {
                    ((a as u64 + (m as u64 - 1) * (c1 as u64 * b as u64 % m as u64)) % m as u64)
                        as u32
                })
                .collect();
            let c2 = pair(&f, &v1);
            let v2: Vec<u32> = v1
                .iter()
                .zip(e.iter())
                .map(|(&a, &b)| ((a as u64 + c2 as u64 * b as u64) % m as u64) as u32)
                .collect();
            next.push(v2);
        }
        basis = next;
        es.push(e);
        fs.push(f);
    }
    // columns: e_1..e_h, f_1..f_h
    let mut a = vec![0u32; k * k];
    for (j, col) in es.iter().chain(fs.iter()).enumerate() {
        for i in 0..k {
            a[i * k + j] = col[i];
        }
    }
    let psi = ZmMatrix::new(m, k, a);
    if !psi.is_invertible() {
        return Err(Error::SymplecticPivot);
    }
    Ok(psi)
}
