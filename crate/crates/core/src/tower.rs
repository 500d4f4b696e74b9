//! Bratteli diagrams of the algebra towers and the fusion rings they are
//! measured against.
//!
//! Both towers over `G = Z_m x Z_m` (the full algebras `A_n` and the
//! inversion-fixed subalgebras `C_n`) have closed-form level data depending
//! only on `|G|`; the diagrams here are generated from that data and
//! cross-validated against the independent monomial counts from [`crate::ttp`].
//! The fusion side builds `End(Z_0^{tensor n})` multiplicities by iterating
//! the fusion rules of the two gaugings `D_{+-}` of a pointed category on an
//! odd abelian group.

use crate::groups::{AbelianGroup, BaseAlgebra, Bihomomorphism, FiniteGroup, ZmMatrix};
use crate::ttp::{inversion_fixed_dim, TTPAlgebra};
use crate::{Error, Result};

/// One node of a Bratteli level: a label and a positive dimension
/// (for fusion towers the "dimension" is the multiplicity in `Z_0^{⊗n}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub dim: u64,
}

/// A leveled multigraph: `edges[k][i][j]` is the multiplicity between node
/// `i` at level `k` and node `j` at level `k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub levels: Vec<Vec<Node>>,
    pub edges: Vec<Vec<Vec<u64>>>,
}

impl BratteliDiagram {
    /// Dimension recursion: each node's dimension is the edge-weighted sum
    /// of its neighbours one level down.
    pub fn validate_recursion(&self) -> bool {
        for k in 0..self.edges.len() {
            let lower = &self.levels[k];
            let upper = &self.levels[k + 1];
            let e = &self.edges[k];
            if e.len() != lower.len() || e.iter().any(|r| r.len() != upper.len()) {
                return false;
            }
            for (j, up) in upper.iter().enumerate() {
                let sum: u64 = lower
                    .iter()
                    .enumerate()
                    .map(|(i, lo)| e[i][j] * lo.dim)
                    .sum();
                if sum != up.dim {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of squared node dimensions at a level (the algebra dimension for
    /// multi-matrix levels, `dim End` for fusion levels).
    pub fn level_dim_squares(&self, level: usize) -> u64 {
        self.levels[level].iter().map(|n| n.dim * n.dim).sum()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Graphviz rendering: node label `name:dim`, edge label the
    /// multiplicity.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n  rankdir=TB;\n  node [shape=box];\n", name));
        for (k, level) in self.levels.iter().enumerate() {
            out.push_str("  { rank=same;");
            for (i, node) in level.iter().enumerate() {
                out.push_str(&format!(" \"L{}_{}\" [label=\"{}:{}\"];", k, i, node.label, node.dim));
            }
            out.push_str(" }\n");
        }
        for (k, e) in self.edges.iter().enumerate() {
            for (i, row) in e.iter().enumerate() {
                for (j, &mult) in row.iter().enumerate() {
                    if mult == 0 {
                        continue;
                    }
                    if mult == 1 {
                        out.push_str(&format!("  \"L{}_{}\" -- \"L{}_{}\";\n", k, i, k + 1, j));
                    } else {
                        out.push_str(&format!(
                            "  \"L{}_{}\" -- \"L{}_{}\" [label=\"{}\"];\n",
                            k, i, k + 1, j, mult
                        ));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Tower of the full algebras `A_n(Z_m x Z_m, tau_i)`, `m` odd: one simple
/// summand at odd levels, `m^2` at even levels, full bipartite single edges.
pub fn bratteli_a(m: u32, depth: usize) -> Result<BratteliDiagram> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::EvenModulus(m));
    }
    let msq = (m as u64) * (m as u64);
    let mut levels = Vec::new();
    let mut edges = Vec::new();
    for n in 1..=depth {
        let nodes = if n % 2 == 1 {
            // one node of dimension m^{n-1}
            vec![Node {
                label: "S".to_string(),
                dim: (m as u64).pow((n - 1) as u32),
            }]
        } else {
            (0..msq)
                .map(|i| Node {
                    label: format!("S{}", i),
                    dim: (m as u64).pow((n - 2) as u32),
                })
                .collect()
        };
        if n > 1 {
            let prev: &Vec<Node> = &levels[n - 2];
            let e = vec![vec![1u64; nodes.len()]; prev.len()];
            edges.push(e);
        }
        levels.push(nodes);
    }
    let d = BratteliDiagram { levels, edges };
    debug_assert!(d.validate_recursion());
    Ok(d)
}

/// Tower of the inversion-fixed subalgebras `C_n(Z_m x Z_m, tau_i)`:
/// delegates to the `|G|`-indexed form below with `|G| = m^2`.
pub fn bratteli_c(m: u32, depth: usize) -> Result<BratteliDiagram> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::EvenModulus(m));
    }
    bratteli_c_tower(m as u64 * m as u64, depth)
}

/// The `C_n` tower for a base group of odd order `big_m`. Level `n` holds
/// (writing `d = big_m^{floor((n-1)/2)}`):
///
/// * a "plus" node of dimension `(d+1)/2`,
/// * a "minus" node of dimension `(d-1)/2` (absent when zero),
/// * on even levels, `(big_m-1)/2` block nodes of dimension `d`.
///
/// Edges: plus-plus and minus-minus always single; odd->even both signed
/// nodes feed every block; even->odd every block feeds both signed nodes.
pub fn bratteli_c_tower(big_m: u64, depth: usize) -> Result<BratteliDiagram> {
    if big_m % 2 == 0 || big_m < 3 {
        return Err(Error::EvenModulus(big_m as u32));
    }
    let blocks = (big_m - 1) / 2;
    #[derive(Clone, Copy, PartialEq)]
    enum Kind {
        Plus,
        Minus,
        Block,
    }
    let level_spec = |n: usize| -> Vec<(Kind, u64)> {
        let d = big_m.pow(((n - 1) / 2) as u32);
        let mut v = Vec::new();
        if n % 2 == 0 {
            for _ in 0..blocks {
                v.push((Kind::Block, d));
            }
        }
        v.push((Kind::Plus, (d + 1) / 2));
        if (d - 1) / 2 > 0 {
            v.push((Kind::Minus, (d - 1) / 2));
        }
        v
    };
    let mut levels: Vec<Vec<Node>> = Vec::new();
    let mut kinds: Vec<Vec<Kind>> = Vec::new();
    let mut edges = Vec::new();
    for n in 1..=depth {
        let spec = level_spec(n);
        let nodes: Vec<Node> = spec
            .iter()
            .enumerate()
            .map(|(i, (k, dim))| Node {
                label: match k {
                    Kind::Plus => "M+".to_string(),
                    Kind::Minus => "M-".to_string(),
                    Kind::Block => format!("B{}", i),
                },
                dim: *dim,
            })
            .collect();
        let kv: Vec<Kind> = spec.iter().map(|(k, _)| *k).collect();
        if n > 1 {
            let prev = &kinds[n - 2];
            let mut e = vec![vec![0u64; kv.len()]; prev.len()];
            for (i, a) in prev.iter().enumerate() {
                for (j, b) in kv.iter().enumerate() {
                    let connected = match (a, b) {
                        (Kind::Plus, Kind::Plus) | (Kind::Minus, Kind::Minus) => true,
                        // odd n-1 -> even n: signed nodes feed every block;
                        // even n-1 -> odd n: blocks feed both signed nodes
                        (Kind::Plus, Kind::Block) | (Kind::Minus, Kind::Block) => true,
                        (Kind::Block, Kind::Plus) | (Kind::Block, Kind::Minus) => true,
                        _ => false,
                    };
                    if connected {
                        e[i][j] = 1;
                    }
                }
            }
            edges.push(e);
        }
        levels.push(nodes);
        kinds.push(kv);
    }
    let d = BratteliDiagram { levels, edges };
    if !d.validate_recursion() {
        return Err(Error::InvalidGroup("tower recursion failed".into()));
    }
    Ok(d)
}

/// Exact dimension in `Z[sqrt(M)]`: `int + root * sqrt(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootDim {
    pub int: u64,
    pub root: u64,
}

impl RootDim {
    fn integer(n: u64) -> Self {
        RootDim { int: n, root: 0 }
    }

    fn sqrt_m() -> Self {
        RootDim { int: 0, root: 1 }
    }

    fn mul(self, other: RootDim, big_m: u64) -> RootDim {
        RootDim {
            int: self.int * other.int + self.root * other.root * big_m,
            root: self.int * other.root + self.root * other.int,
        }
    }

    fn add(self, other: RootDim) -> RootDim {
        RootDim {
            int: self.int + other.int,
            root: self.root + other.root,
        }
    }
}

/// The fusion ring of the gaugings `D_{+-}` over an odd abelian group `A`:
/// simple objects `X+`, `X-`, `Y_a` for `a` in `(A - 0)/±`, `Z_0`, `Z_1`,
/// with dimensions `1, 1, 2, sqrt|A|, sqrt|A|` (stored exactly in
/// `Z[sqrt|A|]`).
#[derive(Clone, Debug)]
pub struct FusionRing {
    pub group_order: u64,
    pub labels: Vec<String>,
    pub dims: Vec<RootDim>,
    /// `n[a][b][c] = N^c_{a,b}`
    pub n: Vec<Vec<Vec<u64>>>,
    pub x_plus: usize,
    pub x_minus: usize,
    pub z0: usize,
    pub z1: usize,
}

pub fn fusion_ring_d(a_factors: &[u32]) -> Result<FusionRing> {
    let ab = AbelianGroup::new(a_factors.to_vec())?;
    let order = ab.order() as u64;
    if order % 2 == 0 || order < 3 {
        return Err(Error::EvenModulus(order as u32));
    }
    // transversal of (A - 0)/± by lexicographically minimal element id
    let mut class_of = vec![usize::MAX; ab.order()];
    let mut reps: Vec<usize> = Vec::new();
    for a in 1..ab.order() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        class_of[a] = idx;
        class_of[ab.neg(a)] = idx;
        reps.push(a);
    }
    let k = reps.len(); // (|A|-1)/2
    let x_plus = 0usize;
    let x_minus = 1usize;
    let y0 = 2usize;
    let z0 = y0 + k;
    let z1 = z0 + 1;
    let count = z1 + 1;
    let mut labels = vec!["X+".to_string(), "X-".to_string()];
    for r in &reps {
        let v = ab.vector_of(*r);
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        labels.push(format!("Y({})", parts.join(",")));
    }
    labels.push("Z0".to_string());
    labels.push("Z1".to_string());
    let mut dims = vec![RootDim::integer(1), RootDim::integer(1)];
    dims.extend(std::iter::repeat(RootDim::integer(2)).take(k));
    dims.push(RootDim::sqrt_m());
    dims.push(RootDim::sqrt_m());

    let mut n = vec![vec![vec![0u64; count]; count]; count];
    let set = |a: usize, b: usize, summands: &[usize], n: &mut Vec<Vec<Vec<u64>>>| {
        for &c in summands {
            n[a][b][c] += 1;
        }
        if a != b {
            for &c in summands {
                n[b][a][c] += 1;
            }
        }
    };
    // unit row
    for obj in 0..count {
        set(x_plus, obj, &[obj], &mut n);
    }
    set(x_minus, x_minus, &[x_plus], &mut n);
    for yi in 0..k {
        set(x_minus, y0 + yi, &[y0 + yi], &mut n);
    }
    set(x_minus, z0, &[z1], &mut n);
    set(x_minus, z1, &[z0], &mut n);
    // Y  x Y
    for i in 0..k {
        for j in i..k {
            let (a, b) = (reps[i], reps[j]);
            if i == j {
                let two_a = ab.add(a, a);
                set(y0 + i, y0 + j, &[x_plus, x_minus, y0 + class_of[two_a]], &mut n);
            } else {
                let s = ab.add(a, b);
                let d = ab.add(a, ab.neg(b));
                set(y0 + i, y0 + j, &[y0 + class_of[s], y0 + class_of[d]], &mut n);
            }
        }
        // Y x Z
        set(y0 + i, z0, &[z0, z1], &mut n);
        set(y0 + i, z1, &[z0, z1], &mut n);
    }
    // Z x Z
    let all_y: Vec<usize> = (0..k).map(|i| y0 + i).collect();
    let mut zz: Vec<usize> = vec![x_plus];
    zz.extend(&all_y);
    set(z0, z0, &zz, &mut n);
    set(z1, z1, &zz, &mut n);
    let mut zz1: Vec<usize> = vec![x_minus];
    zz1.extend(&all_y);
    set(z0, z1, &zz1, &mut n);

    let ring = FusionRing {
        group_order: order,
        labels,
        dims,
        n,
        x_plus,
        x_minus,
        z0,
        z1,
    };
    ring.validate()?;
    Ok(ring)
}

impl FusionRing {
    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    /// Unit, commutativity, exact dimension homomorphism and associativity.
    pub fn validate(&self) -> Result<()> {
        let count = self.object_count();
        let m = self.group_order;
        for b in 0..count {
            for c in 0..count {
                let expect = u64::from(b == c);
                if self.n[self.x_plus][b][c] != expect {
                    return Err(Error::InvalidGroup("fusion unit fails".into()));
                }
            }
        }
        for a in 0..count {
            for b in 0..count {
                for c in 0..count {
                    if self.n[a][b][c] != self.n[b][a][c] {
                        return Err(Error::InvalidGroup("fusion not commutative".into()));
                    }
                }
            }
        }
        // dim(a) dim(b) = sum_c N^c_ab dim(c)
        for a in 0..count {
            for b in 0..count {
                let lhs = self.dims[a].mul(self.dims[b], m);
                let mut rhs = RootDim::integer(0);
                for c in 0..count {
                    let mult = self.n[a][b][c];
                    rhs = rhs.add(RootDim {
                        int: self.dims[c].int * mult,
                        root: self.dims[c].root * mult,
                    });
                }
                if lhs != rhs {
                    return Err(Error::InvalidGroup(format!(
                        "fusion dimension homomorphism fails at ({a},{b})"
                    )));
                }
            }
        }
        // associativity: sum_e N^e_ab N^d_ec = sum_e N^e_bc N^d_ae
        for a in 0..count {
            for b in 0..count {
                for c in 0..count {
                    for d in 0..count {
                        let lhs: u64 =
                            (0..count).map(|e| self.n[a][b][e] * self.n[e][c][d]).sum();
                        let rhs: u64 =
                            (0..count).map(|e| self.n[b][c][e] * self.n[a][e][d]).sum();
                        if lhs != rhs {
                            return Err(Error::InvalidGroup("fusion not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Multiplicity vector of `Z_0^{⊗ n}` (n >= 1).
    pub fn z0_power_multiplicities(&self, n: usize) -> Vec<u64> {
        let count = self.object_count();
        let mut v = vec![0u64; count];
        v[self.z0] = 1;
        for _ in 1..n {
            let mut next = vec![0u64; count];
            for (b, &mult) in v.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                for c in 0..count {
                    next[c] += mult * self.n[b][self.z0][c];
                }
            }
            v = next;
        }
        v
    }
}

/// The tower `End(Z_0^{⊗n})`: level-n nodes are the simple objects with
/// nonzero multiplicity in `Z_0^{⊗n}`, node dimension the multiplicity,
/// edges the fusion with `Z_0`.
pub fn fusion_bratteli(ring: &FusionRing, depth: usize) -> BratteliDiagram {
    let mut levels = Vec::new();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    for n in 1..=depth {
        let v = ring.z0_power_multiplicities(n);
        let support: Vec<usize> = (0..ring.object_count()).filter(|&c| v[c] > 0).collect();
        let nodes: Vec<Node> = support
            .iter()
            .map(|&c| Node {
                label: ring.labels[c].clone(),
                dim: v[c],
            })
            .collect();
        if n > 1 {
            let prev = &supports[n - 2];
            let e: Vec<Vec<u64>> = prev
                .iter()
                .map(|&b| support.iter().map(|&c| ring.n[b][ring.z0][c]).collect())
                .collect();
            edges.push(e);
        }
        levels.push(nodes);
        supports.push(support);
    }
    BratteliDiagram { levels, edges }
}

/// Graded-graph isomorphism by per-level backtracking (levels are tiny).
/// Returns the first level at which no consistent bijection extends, or
/// `None` if the diagrams are isomorphic.
pub fn graded_iso_mismatch(a: &BratteliDiagram, b: &BratteliDiagram) -> Option<usize> {
    let depth = a.depth().min(b.depth());
    for k in 0..depth {
        if a.levels[k].len() != b.levels[k].len() {
            return Some(k);
        }
        let mut da: Vec<u64> = a.levels[k].iter().map(|n| n.dim).collect();
        let mut db: Vec<u64> = b.levels[k].iter().map(|n| n.dim).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Some(k);
        }
    }
    // search for consistent bijections level by level
    fn extend(
        a: &BratteliDiagram,
        b: &BratteliDiagram,
        depth: usize,
        level: usize,
        maps: &mut Vec<Vec<usize>>,
    ) -> bool {
        if level == depth {
            return true;
        }
        let na = a.levels[level].len();
        let mut perm: Vec<usize> = Vec::with_capacity(na);
        let mut used = vec![false; na];
        fn place(
            a: &BratteliDiagram,
            b: &BratteliDiagram,
            depth: usize,
            level: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            maps: &mut Vec<Vec<usize>>,
        ) -> bool {
            let na = a.levels[level].len();
            if perm.len() == na {
                maps.push(perm.clone());
                if extend(a, b, depth, level + 1, maps) {
                    return true;
                }
                maps.pop();
                return false;
            }
            let i = perm.len();
            for j in 0..na {
                if used[j] || a.levels[level][i].dim != b.levels[level][j].dim {
                    continue;
                }
                // consistency with the previous level's edges
                if level > 0 {
                    let prev_map = &maps[level - 1];
                    let ok = (0..a.levels[level - 1].len())
                        .all(|pi| a.edges[level - 1][pi][i] == b.edges[level - 1][prev_map[pi]][j]);
                    if !ok {
                        continue;
                    }
                }
                used[j] = true;
                perm.push(j);
                if place(a, b, depth, level, perm, used, maps) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
            false
        }
        place(a, b, depth, level, &mut perm, &mut used, maps)
    }
    let mut maps: Vec<Vec<usize>> = Vec::new();
    if extend(a, b, depth, 0, &mut maps) {
        None
    } else {
        // no bijection tower exists; report the deepest level reached
        Some(maps.len())
    }
}

/// Result of comparing `End(Z_0^{⊗n})` against the `C_n` tower.
#[derive(Clone, Debug)]
pub struct TowerComparison {
    pub group_order: u64,
    pub depth: usize,
    pub isomorphic: bool,
    pub first_mismatch: Option<usize>,
    /// per level: (sum of squared fusion multiplicities, sum of squared
    /// C-tower dims, counted fixed-subalgebra dimension)
    pub level_dims: Vec<(u64, u64, u64)>,
    pub fusion: BratteliDiagram,
    pub c_tower: BratteliDiagram,
}

/// Compare the fusion tower of `D_{+-}` over `A` with the `C_n` tower of the
/// matching twisted tensor product. `a_factors` must be `[p]` or `[p, p]`
/// so the cross-check algebra is available.
pub fn compare_towers(a_factors: &[u32], depth: usize) -> Result<TowerComparison> {
    let ring = fusion_ring_d(a_factors)?;
    let fusion = fusion_bratteli(&ring, depth);
    let c_tower = bratteli_c_tower(ring.group_order, depth)?;
    let first_mismatch = graded_iso_mismatch(&fusion, &c_tower);
    // counted dims from the twisted tensor product side
    let (group, alpha) = match a_factors {
        [p] => {
            let g = FiniteGroup::cyclic(*p);
            let alpha = Bihomomorphism::zp_two_xy(*p)?;
            (g, alpha)
        }
        [p, q] if p == q => {
            let g = FiniteGroup::abelian(vec![*p, *p])?;
            let two = 2 % *p;
            let alpha =
                Bihomomorphism::from_matrix(&g, *p, ZmMatrix::new(*p, 2, vec![two, 0, 0, two]))?;
            (g, alpha)
        }
        _ => {
            return Err(Error::UnsupportedBase(
                "tower cross-check needs A = Z_p or Z_p x Z_p".into(),
            ))
        }
    };
    let mut level_dims = Vec::new();
    for n in 1..=depth {
        let fusion_sq = fusion.level_dim_squares(n - 1);
        let c_sq = c_tower.level_dim_squares(n - 1);
        let counted = if n >= 2 {
            let alg = TTPAlgebra::new(n, BaseAlgebra::plain(group.clone()), alpha.clone(), None)?;
            inversion_fixed_dim(&alg)?
        } else {
            1
        };
        level_dims.push((fusion_sq, c_sq, counted));
    }
    let dims_ok = level_dims.iter().all(|(a, b, c)| a == b && b == c);
    Ok(TowerComparison {
        group_order: ring.group_order,
        depth,
        isomorphic: first_mismatch.is_none() && dims_ok,
        first_mismatch,
        level_dims,
        fusion,
        c_tower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bratteli_a_levels() {
        let d = bratteli_a(3, 4).unwrap();
        // n=3: one node, dim 9; sum of squares 81 = 3^4
        assert_eq!(d.levels[2].len(), 1);
        assert_eq!(d.levels[2][0].dim, 9);
        assert_eq!(d.level_dim_squares(2), 81);
        // n=2: 9 nodes of dim 1
        assert_eq!(d.levels[1].len(), 9);
        assert!(d.levels[1].iter().all(|n| n.dim == 1));
        assert!(d.validate_recursion());
        assert!(bratteli_a(4, 3).is_err());
    }

    #[test]
    fn bratteli_c_levels() {
        let d = bratteli_c(3, 5).unwrap();
        // n=3: nodes {5, 4}; 25 + 16 = 41
        let mut dims3: Vec<u64> = d.levels[2].iter().map(|n| n.dim).collect();
        dims3.sort_unstable();
        assert_eq!(dims3, vec![4, 5]);
        assert_eq!(d.level_dim_squares(2), 41);
        // n=4: 4 nodes of dim 9 plus {5, 4}; total 365
        let mut dims4: Vec<u64> = d.levels[3].iter().map(|n| n.dim).collect();
        dims4.sort_unstable();
        assert_eq!(dims4, vec![4, 5, 9, 9, 9, 9]);
        assert_eq!(d.level_dim_squares(3), 365);
        // n=5: {41, 40}
        assert_eq!(d.level_dim_squares(4), (3u64.pow(8) + 1) / 2);
        assert!(d.validate_recursion());
    }

    #[test]
    fn c_tower_matches_counted_dims() {
        // formula tower vs monomial counting, |G| = 9
        let d = bratteli_c(3, 4).unwrap();
        let g = FiniteGroup::abelian(vec![3, 3]).unwrap();
        let alpha =
            Bihomomorphism::from_matrix(&g, 3, ZmMatrix::new(3, 2, vec![2, 0, 0, 2])).unwrap();
        for n in 2..=4usize {
            let alg =
                TTPAlgebra::new(n, BaseAlgebra::plain(g.clone()), alpha.clone(), None).unwrap();
            assert_eq!(d.level_dim_squares(n - 1), inversion_fixed_dim(&alg).unwrap());
        }
    }

    #[test]
    fn fusion_ring_z3() {
        let ring = fusion_ring_d(&[3]).unwrap();
        assert_eq!(ring.object_count(), 5); // X+, X-, Y1, Z0, Z1
        // Z0 x Z0 = X+ + Y1
        let row = &ring.n[ring.z0][ring.z0];
        assert_eq!(row[ring.x_plus], 1);
        assert_eq!(row[ring.x_minus], 0);
        assert_eq!(row[2], 1);
        // Y1 x Y1 = X+ + X- + Y_{2a} (= Y1 again for |A| = 3: 2*1 = 2 = -1)
        let yy = &ring.n[2][2];
        assert_eq!(yy[ring.x_plus], 1);
        assert_eq!(yy[ring.x_minus], 1);
        assert_eq!(yy[2], 1);
        // dimension check: m = 1 + 2 (m-1)/2 exactly
        assert!(ring.validate().is_ok());
    }

    #[test]
    fn fusion_ring_z3z3() {
        let ring = fusion_ring_d(&[3, 3]).unwrap();
        assert_eq!(ring.object_count(), 2 + 4 + 2);
        assert!(ring.validate().is_ok());
        // Y_a x Y_b = Y_{a+b} + Y_{a-b} lands in two distinct classes
        let yy = &ring.n[2][3];
        let total: u64 = yy.iter().sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn fusion_tower_z3_levels() {
        let ring = fusion_ring_d(&[3]).unwrap();
        let d = fusion_bratteli(&ring, 5);
        // n=1: {Z0: 1}
        assert_eq!(d.levels[0].len(), 1);
        assert_eq!(d.levels[0][0].dim, 1);
        // n=2: {X+:1, Y1:1}, End dim 2
        assert_eq!(d.level_dim_squares(1), 2);
        // n=3: {Z0:2, Z1:1}, End dim 5
        let mut dims: Vec<u64> = d.levels[2].iter().map(|n| n.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(d.level_dim_squares(2), 5);
        assert!(d.validate_recursion());
    }

    #[test]
    fn compare_towers_small() {
        for (factors, order) in [(vec![3u32], 3u64), (vec![3, 3], 9)] {
            let cmp = compare_towers(&factors, 5).unwrap();
            assert_eq!(cmp.group_order, order);
            assert!(cmp.isomorphic, "tower mismatch for |A| = {}", order);
            assert_eq!(cmp.first_mismatch, None);
            for (a, b, c) in &cmp.level_dims {
                assert_eq!(a, b);
                assert_eq!(b, c);
            }
        }
        // depth 1 trivially isomorphic
        let cmp = compare_towers(&[3], 1).unwrap();
        assert!(cmp.isomorphic);
    }

    #[test]
    fn iso_detects_mismatch() {
        let a = bratteli_c_tower(9, 4).unwrap();
        let b = bratteli_c_tower(25, 4).unwrap();
        assert!(graded_iso_mismatch(&a, &b).is_some());
    }

    #[test]
    fn dot_output_is_stable() {
        let d = bratteli_c(3, 3).unwrap();
        let dot = d.to_dot("c_tower");
        assert!(dot.contains("graph \"c_tower\""));
        assert!(dot.contains("M+:5"));
        assert_eq!(dot, d.to_dot("c_tower"));
    }
}
