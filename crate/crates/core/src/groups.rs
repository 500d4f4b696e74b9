//! Finite groups, twisted base algebras and bihomomorphisms.
//!
//! Group elements are plain indices (`usize`). Abelian groups index their
//! elements mixed-radix over the invariant factors; presented groups carry an
//! explicit multiplication table validated at construction. Everything is
//! desk-scale: |G| stays below a few dozen.

use num_integer::Integer;

use crate::{Error, Result};

/// Abelian group `Z_{f_1} x ... x Z_{f_k}` with elements as exponent vectors
/// reduced mod the invariant factors, indexed mixed-radix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f == 0) {
            return Err(Error::InvalidGroup("empty or zero invariant factor".into()));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&f| f as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1u32, |acc, &f| acc.lcm(&f))
    }

    pub fn index_of(&self, v: &[u32]) -> usize {
        let mut idx = 0usize;
        for (x, f) in v.iter().zip(self.factors.iter()) {
            idx = idx * (*f as usize) + (*x % f) as usize;
        }
        idx
    }

    pub fn vector_of(&self, mut idx: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let f = self.factors[i] as usize;
            v[i] = (idx % f) as u32;
            idx /= f;
        }
        v
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let va = self.vector_of(a);
        let vb = self.vector_of(b);
        let sum: Vec<u32> = va
            .iter()
            .zip(vb.iter())
            .zip(self.factors.iter())
            .map(|((x, y), f)| (x + y) % f)
            .collect();
        self.index_of(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let va = self.vector_of(a);
        let nv: Vec<u32> = va
            .iter()
            .zip(self.factors.iter())
            .map(|(x, f)| (f - x) % f)
            .collect();
        self.index_of(&nv)
    }
}

/// A finite group given by an explicit multiplication table. Group axioms
/// are checked at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    exponent: u32,
}

impl PresentedGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table
            .iter()
            .any(|r| r.iter().any(|&v| v >= n))
        {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        // identity
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|g| table[e][g] == g && table[g][e] == g) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // inverses
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => {
                    return Err(Error::InvalidGroup(format!("element {a} has no inverse")))
                }
            }
        }
        let mut exponent = 1u32;
        for a in 0..n {
            let mut k = 1u32;
            let mut cur = a;
            while cur != identity {
                cur = table[cur][a];
                k += 1;
            }
            exponent = exponent.lcm(&k);
        }
        Ok(PresentedGroup {
            table,
            identity,
            inverses,
            exponent,
        })
    }

    /// The symmetric group on 3 letters; element 0 is the identity, and the
    /// elements are the 6 permutations of `[0,1,2]` in lexicographic order.
    /// In the conventions used elsewhere: `u = (0 1)` is index 2 and
    /// `v = (0 1 2)` is index 3.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p*q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let n = perms.len();
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let r = compose(&perms[i], &perms[j]);
                table[i][j] = perms.iter().position(|p| *p == r).unwrap();
            }
        }
        Self::from_table(table).unwrap()
    }

    /// Sign exponent (0 even, 1 odd) of a symmetric3 element.
    pub fn s3_sign(idx: usize) -> u32 {
        // parity of the permutations listed in symmetric3()
        [0, 1, 1, 0, 0, 1][idx]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiniteGroup {
    Abelian(AbelianGroup),
    Presented(PresentedGroup),
}

impl FiniteGroup {
    pub fn abelian(factors: Vec<u32>) -> Result<Self> {
        Ok(FiniteGroup::Abelian(AbelianGroup::new(factors)?))
    }

    pub fn cyclic(m: u32) -> Self {
        FiniteGroup::Abelian(AbelianGroup::new(vec![m]).unwrap())
    }

    pub fn s3() -> Self {
        FiniteGroup::Presented(PresentedGroup::symmetric3())
    }

    pub fn order(&self) -> usize {
        match self {
            FiniteGroup::Abelian(a) => a.order(),
            FiniteGroup::Presented(p) => p.table.len(),
        }
    }

    pub fn exponent(&self) -> u32 {
        match self {
            FiniteGroup::Abelian(a) => a.exponent(),
            FiniteGroup::Presented(p) => p.exponent,
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            FiniteGroup::Abelian(_) => 0,
            FiniteGroup::Presented(p) => p.identity,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            FiniteGroup::Abelian(g) => g.add(a, b),
            FiniteGroup::Presented(p) => p.table[a][b],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match self {
            FiniteGroup::Abelian(g) => g.neg(a),
            FiniteGroup::Presented(p) => p.inverses[a],
        }
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            FiniteGroup::Abelian(_) => true,
            FiniteGroup::Presented(p) => {
                let n = p.table.len();
                (0..n).all(|a| (0..n).all(|b| p.table[a][b] == p.table[b][a]))
            }
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match self {
            FiniteGroup::Abelian(a) => Some(a),
            FiniteGroup::Presented(_) => None,
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Human-readable element label for reports.
    pub fn label(&self, idx: usize) -> String {
        match self {
            FiniteGroup::Abelian(a) => {
                let v = a.vector_of(idx);
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            FiniteGroup::Presented(_) => format!("g{}", idx),
        }
    }

    /// Subgroup generated by a set of elements (as a sorted id list).
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut stack: Vec<usize> = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }
}

/// Multiplicative 2-cocycle with values `zeta_modulus^entry`, normalized so
/// that `nu(e, g) = nu(g, e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    pub modulus: u32,
    table: Vec<Vec<u32>>,
}

impl Cocycle {
    pub fn new(group: &FiniteGroup, modulus: u32, table: Vec<Vec<u32>>) -> Result<Self> {
        let n = group.order();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCocycle("table has wrong shape".into()));
        }
        let e = group.identity();
        for g in 0..n {
            if table[e][g] % modulus != 0 || table[g][e] % modulus != 0 {
                return Err(Error::InvalidCocycle("not normalized at identity".into()));
            }
        }
        // nu(g,h) nu(gh,k) = nu(h,k) nu(g,hk)
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = (table[g][h] + table[group.mul(g, h)][k]) % modulus;
                    let rhs = (table[h][k] + table[g][group.mul(h, k)]) % modulus;
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle(format!(
                            "cocycle identity fails at ({g},{h},{k})"
                        )));
                    }
                }
            }
        }
        Ok(Cocycle { modulus, table })
    }

    pub fn eval(&self, g: usize, h: usize) -> u32 {
        self.table[g][h]
    }
}

/// A finite group together with an optional 2-cocycle twist; the underlying
/// algebra is `C^nu[G]` with `g *_nu h = nu(g,h) (gh)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseAlgebra {
    pub group: FiniteGroup,
    pub cocycle: Option<Cocycle>,
}

impl BaseAlgebra {
    pub fn plain(group: FiniteGroup) -> Self {
        BaseAlgebra {
            group,
            cocycle: None,
        }
    }

    pub fn twisted(group: FiniteGroup, cocycle: Cocycle) -> Self {
        BaseAlgebra {
            group,
            cocycle: Some(cocycle),
        }
    }

    /// The quaternion algebra as a cocycle twist of `C[Z_2 x Z_2]`:
    /// u = (1,0) maps to i, v = (0,1) to j, uv to k.
    pub fn quaternion() -> Self {
        let group = FiniteGroup::abelian(vec![2, 2]).unwrap();
        // sign table of quaternion multiplication, exponents of -1; rows are
        // the left factor, in element-index order (1, j, i, k).
        let signs = [
            [0, 0, 0, 0],
            [0, 1, 1, 0],
            [0, 0, 1, 1],
            [0, 1, 0, 1],
        ];
        let table = signs.iter().map(|r| r.to_vec()).collect();
        let cocycle = Cocycle::new(&group, 2, table).unwrap();
        BaseAlgebra::twisted(group, cocycle)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn cocycle_modulus(&self) -> u32 {
        self.cocycle.as_ref().map(|c| c.modulus).unwrap_or(1)
    }
}

/// Bihomomorphism `alpha: G x G -> Z_m`, additive in each slot. Stored as a
/// full value table; for abelian groups constructed from a matrix the matrix
/// is kept alongside for structural operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bihomomorphism {
    pub modulus: u32,
    table: Vec<Vec<u32>>,
    matrix: Option<ZmMatrix>,
}

impl Bihomomorphism {
    /// Validate a raw table as a bihomomorphism on `group`.
    pub fn from_table(group: &FiniteGroup, modulus: u32, table: Vec<Vec<u32>>) -> Result<Self> {
        let n = group.order();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::NotBihomomorphism("table has wrong shape".into()));
        }
        if group.exponent() % modulus != 0 {
            return Err(Error::NotBihomomorphism(format!(
                "modulus {} does not divide the group exponent {}",
                modulus,
                group.exponent()
            )));
        }
        for g in 0..n {
            for g2 in 0..n {
                for h in 0..n {
                    let left = (table[group.mul(g, g2)][h]) % modulus;
                    let right = (table[g][h] + table[g2][h]) % modulus;
                    if left != right {
                        return Err(Error::NotBihomomorphism(format!(
                            "not additive in the first slot at ({g},{g2},{h})"
                        )));
                    }
                    let left = (table[h][group.mul(g, g2)]) % modulus;
                    let right = (table[h][g] + table[h][g2]) % modulus;
                    if left != right {
                        return Err(Error::NotBihomomorphism(format!(
                            "not additive in the second slot at ({h},{g},{g2})"
                        )));
                    }
                }
            }
        }
        // additivity forces commutators into the kernel, i.e. alpha factors
        // through the abelianization; check it explicitly for presented groups
        if !group.is_abelian() {
            for g in 0..n {
                for h in 0..n {
                    let c = group.mul(group.mul(g, h), group.mul(group.inv(g), group.inv(h)));
                    for k in 0..n {
                        if table[c][k] % modulus != 0 || table[k][c] % modulus != 0 {
                            return Err(Error::NotBihomomorphism(
                                "does not factor through the abelianization".into(),
                            ));
                        }
                    }
                }
            }
        }
        let table: Vec<Vec<u32>> = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % modulus).collect())
            .collect();
        Ok(Bihomomorphism {
            modulus,
            table,
            matrix: None,
        })
    }

    /// `alpha(x, y) = x^T A y` on an abelian group with all invariant
    /// factors equal.
    pub fn from_matrix(group: &FiniteGroup, modulus: u32, mat: ZmMatrix) -> Result<Self> {
        let ab = group
            .as_abelian()
            .ok_or_else(|| Error::NotBihomomorphism("matrix form needs an abelian group".into()))?;
        if mat.k != ab.rank() || mat.m != modulus {
            return Err(Error::NotBihomomorphism("matrix shape/modulus mismatch".into()));
        }
        let n = group.order();
        let mut table = vec![vec![0u32; n]; n];
        for g in 0..n {
            let vg = ab.vector_of(g);
            for h in 0..n {
                let vh = ab.vector_of(h);
                table[g][h] = mat.bilinear(&vg, &vh);
            }
        }
        let mut out = Self::from_table(group, modulus, table)?;
        out.matrix = Some(mat);
        Ok(out)
    }

    pub fn from_fn(
        group: &FiniteGroup,
        modulus: u32,
        f: impl Fn(usize, usize) -> u32,
    ) -> Result<Self> {
        let n = group.order();
        let table = (0..n)
            .map(|g| (0..n).map(|h| f(g, h) % modulus).collect())
            .collect();
        Self::from_table(group, modulus, table)
    }

    /// The standard twist on `Z_p`: `alpha(x, y) = 2xy`.
    pub fn zp_two_xy(p: u32) -> Result<Self> {
        let group = FiniteGroup::cyclic(p);
        Self::from_matrix(&group, p, ZmMatrix::new(p, 1, vec![2 % p]))
    }

    pub fn eval(&self, g: usize, h: usize) -> u32 {
        self.table[g][h]
    }

    pub fn matrix(&self) -> Option<&ZmMatrix> {
        self.matrix.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|r| r.iter().all(|&v| v == 0))
    }
}

/// Small dense matrix over `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZmMatrix {
    pub m: u32,
    pub k: usize,
    /// row-major entries, already reduced mod m
    pub a: Vec<u32>,
}

impl ZmMatrix {
    pub fn new(m: u32, k: usize, a: Vec<u32>) -> Self {
        assert_eq!(a.len(), k * k);
        ZmMatrix {
            m,
            k,
            a: a.into_iter().map(|v| v % m).collect(),
        }
    }

    pub fn identity(m: u32, k: usize) -> Self {
        let mut a = vec![0u32; k * k];
        for i in 0..k {
            a[i * k + i] = 1 % m;
        }
        ZmMatrix { m, k, a }
    }

    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.a[r * self.k + c]
    }

    pub fn mul(&self, other: &ZmMatrix) -> ZmMatrix {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = vec![0u64; k * k];
        for i in 0..k {
            for l in 0..k {
                let v = self.at(i, l) as u64;
                if v == 0 {
                    continue;
                }
                for j in 0..k {
                    out[i * k + j] += v * other.at(l, j) as u64;
                }
            }
        }
        ZmMatrix::new(
            self.m,
            k,
            out.into_iter().map(|v| (v % self.m as u64) as u32).collect(),
        )
    }

    pub fn matvec(&self, v: &[u32]) -> Vec<u32> {
        let k = self.k;
        (0..k)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..k {
                    acc += self.at(i, j) as u64 * v[j] as u64;
                }
                (acc % self.m as u64) as u32
            })
            .collect()
    }

    pub fn bilinear(&self, x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0u64;
        for i in 0..self.k {
            for j in 0..self.k {
                acc += x[i] as u64 * self.at(i, j) as u64 * y[j] as u64;
            }
        }
        (acc % self.m as u64) as u32
    }

    pub fn transpose(&self) -> ZmMatrix {
        let k = self.k;
        let mut a = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                a[j * k + i] = self.at(i, j);
            }
        }
        ZmMatrix { m: self.m, k, a }
    }

    pub fn neg(&self) -> ZmMatrix {
        ZmMatrix::new(
            self.m,
            self.k,
            self.a.iter().map(|&v| (self.m - v % self.m) % self.m).collect(),
        )
    }

    pub fn scale(&self, c: u32) -> ZmMatrix {
        ZmMatrix::new(
            self.m,
            self.k,
            self.a
                .iter()
                .map(|&v| ((v as u64 * c as u64) % self.m as u64) as u32)
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> ZmMatrix {
        let mut acc = ZmMatrix::identity(self.m, self.k);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by cofactor expansion (k is tiny).
    pub fn det(&self) -> u32 {
        fn go(m: u64, k: usize, a: &[u64]) -> u64 {
            if k == 1 {
                return a[0] % m;
            }
            let mut acc: u64 = 0;
            for j in 0..k {
                if a[j] == 0 {
                    continue;
                }
                let minor: Vec<u64> = (1..k)
                    .flat_map(|r| (0..k).filter(|&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| a[r * k + c])
                    .collect();
                let sub = go(m, k - 1, &minor);
                let term = (a[j] % m) * sub % m;
                if j % 2 == 0 {
                    acc = (acc + term) % m;
                } else {
                    acc = (acc + m - term) % m;
                }
            }
            acc
        }
        let a: Vec<u64> = self.a.iter().map(|&v| v as u64).collect();
        go(self.m as u64, self.k, &a) as u32
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.m) == 1
    }

    /// Inverse via adjugate; requires `det` to be a unit mod m.
    pub fn inverse(&self) -> Option<ZmMatrix> {
        let d = self.det();
        let dinv = mod_inverse(d, self.m)?;
        let k = self.k;
        if k == 1 {
            return Some(ZmMatrix::new(self.m, 1, vec![dinv]));
        }
        let mut adj = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                // cofactor C_{i,j}, transposed into adj[j][i]
                let minor: Vec<u32> = (0..k)
                    .filter(|&r| r != i)
                    .flat_map(|r| {
                        (0..k)
                            .filter(|&c| c != j)
                            .map(move |c| self.at(r, c))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let sub = ZmMatrix::new(self.m, k - 1, minor).det();
                let sign_flip = (i + j) % 2 == 1;
                let val = if sign_flip { (self.m - sub) % self.m } else { sub };
                adj[j * k + i] = ((val as u64 * dinv as u64) % self.m as u64) as u32;
            }
        }
        Some(ZmMatrix::new(self.m, k, adj))
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.transpose() == self.neg()
    }
}

pub fn mod_inverse(a: u32, m: u32) -> Option<u32> {
    let a = a % m;
    let (g, x, _) = ext_gcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i64) as u32)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// One orbit of bilinear-form matrices under `X -> Psi^T X Psi`.
#[derive(Clone, Debug)]
pub struct FormOrbit {
    pub representative: ZmMatrix,
    pub size: usize,
}

/// Complete orbit decomposition of all k x k matrices over `Z_p` under
/// congruence by `GL_k(Z_p)`. Representatives are the lexicographically
/// minimal matrices of each orbit.
pub fn form_orbits(k: usize, p: u32) -> Result<Vec<FormOrbit>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total = (p as u64).pow((k * k) as u32) as usize;
    // all invertible Psi
    let gl: Vec<ZmMatrix> = (0..total)
        .map(|idx| decode_matrix(idx, k, p))
        .filter(|m| m.is_invertible())
        .collect();
    let mut visited = vec![false; total];
    let mut orbits = Vec::new();
    for idx in 0..total {
        if visited[idx] {
            continue;
        }
        let x = decode_matrix(idx, k, p);
        let mut members = std::collections::HashSet::new();
        for psi in &gl {
            let y = psi.transpose().mul(&x).mul(psi);
            members.insert(encode_matrix(&y, p));
        }
        for &m in &members {
            visited[m] = true;
        }
        orbits.push(FormOrbit {
            representative: x,
            size: members.len(),
        });
    }
    Ok(orbits)
}

fn decode_matrix(mut idx: usize, k: usize, p: u32) -> ZmMatrix {
    let mut a = vec![0u32; k * k];
    for v in a.iter_mut().rev() {
        *v = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    ZmMatrix::new(p, k, a)
}

fn encode_matrix(m: &ZmMatrix, p: u32) -> usize {
    m.a.iter().fold(0usize, |acc, &v| acc * p as usize + v as usize)
}

/// All automorphisms of `G` preserving `alpha`, as element permutations.
/// Abelian groups must have all invariant factors equal; presented groups
/// are searched by brute force (fine for |G| <= 12).
pub fn aut_preserving(group: &FiniteGroup, alpha: &Bihomomorphism) -> Result<Vec<Vec<usize>>> {
    let candidates = all_automorphisms(group)?;
    let n = group.order();
    Ok(candidates
        .into_iter()
        .filter(|psi| {
            (0..n).all(|g| {
                (0..n).all(|h| alpha.eval(psi[g], psi[h]) == alpha.eval(g, h))
            })
        })
        .collect())
}

/// All automorphisms of `G` as element permutations.
pub fn all_automorphisms(group: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    match group {
        FiniteGroup::Abelian(ab) => {
            let k = ab.rank();
            let m = ab.factors()[0];
            if ab.factors().iter().any(|&f| f != m) {
                return Err(Error::UnsupportedBase(
                    "automorphism enumeration needs equal invariant factors".into(),
                ));
            }
            let total = (m as u64).pow((k * k) as u32) as usize;
            let mut out = Vec::new();
            for idx in 0..total {
                let mat = decode_matrix(idx, k, m);
                if !mat.is_invertible() {
                    continue;
                }
                let perm: Vec<usize> = (0..ab.order())
                    .map(|g| ab.index_of(&mat.matvec(&ab.vector_of(g))))
                    .collect();
                out.push(perm);
            }
            Ok(out)
        }
        FiniteGroup::Presented(p) => {
            let n = p.table.len();
            let mut out = Vec::new();
            let mut perm = vec![usize::MAX; n];
            perm[p.identity] = p.identity;
            fn search(
                p: &PresentedGroup,
                perm: &mut Vec<usize>,
                used: &mut Vec<bool>,
                next: usize,
                out: &mut Vec<Vec<usize>>,
            ) {
                let n = p.table.len();
                let pos = (0..n).find(|&i| perm[i] == usize::MAX);
                let Some(g) = pos else {
                    out.push(perm.clone());
                    return;
                };
                let _ = next;
                for img in 0..n {
                    if used[img] {
                        continue;
                    }
                    perm[g] = img;
                    used[img] = true;
                    // check all products already determined
                    let ok = (0..n).all(|a| {
                        (0..n).all(|b| {
                            if perm[a] == usize::MAX || perm[b] == usize::MAX {
                                return true;
                            }
                            let ab = p.table[a][b];
                            if perm[ab] == usize::MAX {
                                return true;
                            }
                            p.table[perm[a]][perm[b]] == perm[ab]
                        })
                    });
                    if ok {
                        search(p, perm, used, next + 1, out);
                    }
                    perm[g] = usize::MAX;
                    used[img] = false;
                }
            }
            let mut used = vec![false; n];
            used[p.identity] = true;
            search(p, &mut perm, &mut used, 0, &mut out);
            Ok(out)
        }
    }
}

/// All homomorphisms `G -> Z_m`, returned as per-element value vectors.
pub fn characters(group: &FiniteGroup, m: u32) -> Vec<Vec<u32>> {
    let n = group.order();
    let e = group.identity();
    let mut out = Vec::new();
    let mut values = vec![u32::MAX; n];
    values[e] = 0;
    fn propagate(group: &FiniteGroup, values: &mut Vec<u32>, m: u32) -> bool {
        // close under products until stable; detect conflicts
        let n = group.order();
        loop {
            let mut changed = false;
            for a in 0..n {
                if values[a] == u32::MAX {
                    continue;
                }
                for b in 0..n {
                    if values[b] == u32::MAX {
                        continue;
                    }
                    let ab = group.mul(a, b);
                    let v = (values[a] + values[b]) % m;
                    if values[ab] == u32::MAX {
                        values[ab] = v;
                        changed = true;
                    } else if values[ab] != v {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
    fn search(group: &FiniteGroup, values: &mut Vec<u32>, m: u32, out: &mut Vec<Vec<u32>>) {
        let n = group.order();
        let free = (0..n).find(|&i| values[i] == u32::MAX);
        let Some(g) = free else {
            out.push(values.clone());
            return;
        };
        for v in 0..m {
            let mut trial = values.clone();
            trial[g] = v;
            if propagate(group, &mut trial, m) {
                search(group, &mut trial, m, out);
            }
        }
    }
    search(group, &mut values, m, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_indexing_round_trips() {
        let g = AbelianGroup::new(vec![3, 5]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.vector_of(i)), i);
        }
        assert_eq!(g.exponent(), 15);
    }

    #[test]
    fn s3_is_a_valid_group() {
        let s3 = PresentedGroup::symmetric3();
        assert_eq!(s3.table.len(), 6);
        assert_eq!(s3.exponent, 6);
        let g = FiniteGroup::s3();
        assert!(!g.is_abelian());
        // u = (0 1) has order 2, v = (0 1 2) has order 3, u v u = v^2
        let u = 2;
        let v = 3;
        assert_eq!(g.mul(u, u), g.identity());
        assert_eq!(g.pow(v, 3), g.identity());
        assert_eq!(g.mul(g.mul(u, v), u), g.mul(v, v));
    }

    #[test]
    fn bad_tables_rejected() {
        // a latin square that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(PresentedGroup::from_table(t).is_err());
    }

    #[test]
    fn quaternion_relations() {
        let q8 = BaseAlgebra::quaternion();
        let nu = q8.cocycle.as_ref().unwrap();
        let g = &q8.group;
        let (u, v) = (g.as_abelian().unwrap().index_of(&[1, 0]), g.as_abelian().unwrap().index_of(&[0, 1]));
        // u*u = -1, v*v = -1, uv = +w, vu = -w
        assert_eq!(nu.eval(u, u), 1);
        assert_eq!(nu.eval(v, v), 1);
        assert_eq!(nu.eval(u, v), 0);
        assert_eq!(nu.eval(v, u), 1);
    }

    #[test]
    fn bihom_validation() {
        let g = FiniteGroup::cyclic(3);
        let alpha = Bihomomorphism::zp_two_xy(3).unwrap();
        assert_eq!(alpha.eval(1, 1), 2);
        assert_eq!(alpha.eval(2, 1), 1); // 2*2*1 = 4 = 1 mod 3
        // unitality
        assert_eq!(alpha.eval(0, 1), 0);
        assert_eq!(alpha.eval(1, 0), 0);
        // a table violating additivity: alpha(1,1)=1 but alpha(2,1)=1
        let bad = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 1, 0]];
        assert!(Bihomomorphism::from_table(&g, 3, bad).is_err());
        // m must divide exp(G)
        assert!(Bihomomorphism::from_fn(&g, 2, |_, _| 0).is_err());
    }

    #[test]
    fn s3_sign_bihomomorphism() {
        let g = FiniteGroup::s3();
        let alpha = Bihomomorphism::from_fn(&g, 2, |a, b| {
            PresentedGroup::s3_sign(a) * PresentedGroup::s3_sign(b)
        })
        .unwrap();
        // alpha(u, u) = 1 for the transposition u
        assert_eq!(alpha.eval(2, 2), 1);
        assert_eq!(alpha.eval(3, 3), 0);
    }

    #[test]
    fn form_orbit_counts() {
        // p + 7 orbits of 2x2 matrices under congruence
        assert_eq!(form_orbits(2, 3).unwrap().len(), 10);
        assert_eq!(form_orbits(2, 5).unwrap().len(), 12);
        // orbit sizes partition the p^(k^2) matrices
        let orbits = form_orbits(2, 3).unwrap();
        let total: usize = orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, 81);
        // 1x1: {0}, squares, non-squares
        assert_eq!(form_orbits(1, 3).unwrap().len(), 3);
        assert!(form_orbits(2, 4).is_err());
    }

    #[test]
    fn aut_preserving_orders() {
        // Z_p with alpha = 2xy: only identity and inversion
        let alpha = Bihomomorphism::zp_two_xy(5).unwrap();
        let g = FiniteGroup::cyclic(5);
        let auts = aut_preserving(&g, &alpha).unwrap();
        assert_eq!(auts.len(), 2);

        // Stabilizers of the symmetric forms are the orthogonal groups:
        // order 2(p-1) for the split form, 2(p+1) for the non-split one.
        // Which of diag(2,2) / diag(2,2x) is split depends on p mod 4.

        // p = 5 (p = 1 mod 4): diag(2,2) split -> 2(p-1) = 8,
        // diag(2,2x) with x = 2 non-split -> 2(p+1) = 12.
        let g5 = FiniteGroup::abelian(vec![5, 5]).unwrap();
        let a1 = Bihomomorphism::from_matrix(&g5, 5, ZmMatrix::new(5, 2, vec![2, 0, 0, 2])).unwrap();
        assert_eq!(aut_preserving(&g5, &a1).unwrap().len(), 8);
        let a3 = Bihomomorphism::from_matrix(&g5, 5, ZmMatrix::new(5, 2, vec![2, 0, 0, 4])).unwrap();
        assert_eq!(aut_preserving(&g5, &a3).unwrap().len(), 12);

        // skew A_2: SL_2(Z_p), order (p^2-p)(p+1)
        let g2 = FiniteGroup::abelian(vec![3, 3]).unwrap();
        let a2 = Bihomomorphism::from_matrix(&g2, 3, ZmMatrix::new(3, 2, vec![0, 2, 1, 0])).unwrap();
        assert_eq!(aut_preserving(&g2, &a2).unwrap().len(), 24);

        // p = 3 (p = 3 mod 4): diag(2,2) is non-split -> 2(p+1) = 8,
        // diag(2,2x) with x = 2 is split -> 2(p-1) = 4.
        let b1 = Bihomomorphism::from_matrix(&g2, 3, ZmMatrix::new(3, 2, vec![2, 0, 0, 2])).unwrap();
        assert_eq!(aut_preserving(&g2, &b1).unwrap().len(), 8);
        let b3 = Bihomomorphism::from_matrix(&g2, 3, ZmMatrix::new(3, 2, vec![2, 0, 0, 4])).unwrap();
        assert_eq!(aut_preserving(&g2, &b3).unwrap().len(), 4);
    }

    #[test]
    fn aut_group_closure() {
        let g = FiniteGroup::abelian(vec![3, 3]).unwrap();
        let a1 = Bihomomorphism::from_matrix(&g, 3, ZmMatrix::new(3, 2, vec![2, 0, 0, 2])).unwrap();
        let auts = aut_preserving(&g, &a1).unwrap();
        // closed under composition and inverse
        for p in &auts {
            for q in &auts {
                let comp: Vec<usize> = (0..g.order()).map(|i| p[q[i]]).collect();
                assert!(auts.contains(&comp));
            }
            let mut inv = vec![0; g.order()];
            for (i, &pi) in p.iter().enumerate() {
                inv[pi] = i;
            }
            assert!(auts.contains(&inv));
        }
    }

    #[test]
    fn character_counts() {
        let z5 = FiniteGroup::cyclic(5);
        assert_eq!(characters(&z5, 5).len(), 5);
        let z33 = FiniteGroup::abelian(vec![3, 3]).unwrap();
        assert_eq!(characters(&z33, 3).len(), 9);
        // S3 -> Z_4 factors through the sign
        let s3 = FiniteGroup::s3();
        assert_eq!(characters(&s3, 4).len(), 2);
    }

    #[test]
    fn s3_automorphism_count() {
        let s3 = FiniteGroup::s3();
        assert_eq!(all_automorphisms(&s3).unwrap().len(), 6);
    }

    #[test]
    fn zm_matrix_inverse() {
        let a = ZmMatrix::new(5, 2, vec![1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ZmMatrix::identity(5, 2));
        let sing = ZmMatrix::new(5, 2, vec![1, 2, 2, 4]);
        assert!(sing.inverse().is_none());
    }
}
