//! Orbit frames over posets: frame automorphisms, direct interdependence,
//! orbit graphs, interdependent orbit unions, tightness, max-locked
//! detection, and lock cycles.

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::{aut_group, aut_group_cell_preserving, find_isomorphism};
use crate::permgroup::PermGroup;
use crate::poset_core::Poset;
use crate::{Error, Result};

/// A partition of a poset's elements into antichains. Cells are stored
/// sorted internally and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFrame {
    cells: Vec<Vec<usize>>,
}

impl OrbitFrame {
    /// Validates that `cells` partition `0..p.size()` and that every cell is
    /// an antichain, then normalizes the ordering.
    pub fn new(p: &Poset, cells: Vec<Vec<usize>>) -> Result<OrbitFrame> {
        let n = p.size();
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidFrame("empty cell".into()));
            }
            for &x in cell {
                if x >= n {
                    return Err(Error::IndexOutOfRange(x));
                }
                if seen[x] {
                    return Err(Error::InvalidFrame(format!("element {x} in two cells")));
                }
                seen[x] = true;
            }
            if !p.is_antichain(cell) {
                return Err(Error::NotAntichain(cell.clone()));
            }
        }
        if !seen.into_iter().all(|s| s) {
            return Err(Error::InvalidFrame("cells do not cover the poset".into()));
        }
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        cells.sort_by_key(|c| c[0]);
        Ok(OrbitFrame { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// cell_of[x] = index of the cell containing x.
    pub fn cell_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0usize; n];
        for (i, cell) in self.cells.iter().enumerate() {
            for &x in cell {
                out[x] = i;
            }
        }
        out
    }

    /// The frame with every cell a singleton.
    pub fn singletons(n: usize) -> OrbitFrame {
        OrbitFrame { cells: (0..n).map(|x| vec![x]).collect() }
    }
}

/// A poset together with an orbit frame; tightness flags are computed
/// eagerly at construction.
#[derive(Debug, Clone)]
pub struct StructuredPoset {
    pub poset: Poset,
    pub frame: OrbitFrame,
    /// Without slack and every cell a single frame-automorphism orbit.
    pub tight: bool,
    /// No cell contains a nontrivial order-autonomous antichain.
    pub without_slack: bool,
}

impl StructuredPoset {
    pub fn new(poset: Poset, frame: OrbitFrame) -> StructuredPoset {
        let without_slack = frame_without_slack(&poset, &frame);
        let tight = without_slack && cells_are_orbits(&poset, &frame);
        StructuredPoset { poset, frame, tight, without_slack }
    }

    /// The poset with its automorphism orbits as frame.
    pub fn natural(poset: Poset) -> StructuredPoset {
        let frame = natural_frame(&poset);
        StructuredPoset::new(poset, frame)
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }
}

fn frame_without_slack(p: &Poset, frame: &OrbitFrame) -> bool {
    let ambient: Vec<usize> = (0..p.size()).collect();
    frame.cells().iter().all(|cell| {
        p.maximal_autonomous_antichain_partition(&ambient, cell)
            .map(|parts| parts.iter().all(|c| c.len() == 1))
            .unwrap_or(false)
    })
}

fn cells_are_orbits(p: &Poset, frame: &OrbitFrame) -> bool {
    let g = aut_group_cell_preserving(p, &frame.cell_of(p.size()));
    let mut orbits = g.orbits();
    orbits.sort_by_key(|o| o[0]);
    orbits == frame.cells()
}

/// The partition of the poset into its automorphism orbits. Each orbit is an
/// antichain since automorphisms preserve rank; asserted anyway.
pub fn natural_frame(p: &Poset) -> OrbitFrame {
    let orbits = aut_group(p).orbits();
    OrbitFrame::new(p, orbits).expect("automorphism orbits are antichains")
}

/// The subgroup of automorphisms whose element-orbits all stay inside one
/// frame cell.
pub fn frame_automorphisms(sp: &StructuredPoset) -> PermGroup {
    aut_group_cell_preserving(&sp.poset, &sp.frame.cell_of(sp.size()))
}

/// Restrictions of the frame automorphisms to `cells` (a set of frame-cell
/// indices). Valid because every frame automorphism maps each cell to
/// itself, so restriction is a group homomorphism.
pub fn restriction_image(sp: &StructuredPoset, cells: &[usize]) -> PermGroup {
    let mut points: Vec<usize> = Vec::new();
    for &c in cells {
        points.extend_from_slice(&sp.frame.cells()[c]);
    }
    points.sort_unstable();
    frame_automorphisms(sp).restrict_to(&points)
}

/// True when the two cells have both a strict comparability and an
/// incomparable pair between them.
pub fn direct_interdependence(sp: &StructuredPoset, c: usize, d: usize) -> Result<bool> {
    if c == d {
        return Err(Error::ParamOutOfRange("cells must be distinct".into()));
    }
    let (a, b) = (&sp.frame.cells()[c], &sp.frame.cells()[d]);
    let mut comparable = false;
    let mut incomparable = false;
    for &x in a {
        for &y in b {
            if sp.poset.comparable(x, y) {
                comparable = true;
            } else {
                incomparable = true;
            }
        }
    }
    Ok(comparable && incomparable)
}

/// Graph on frame cells with direct-interdependence edges. Orientation
/// annotations record which side has an element strictly below the other.
#[derive(Debug, Clone)]
pub struct OrbitGraph {
    /// element sets of the vertices, in frame order
    pub cells: Vec<Vec<usize>>,
    /// edges (i, j) with i < j, sorted
    pub edges: Vec<(usize, usize)>,
    /// per edge: (some element of i below one of j, some element of j below one of i)
    pub orientations: Vec<(bool, bool)>,
}

impl OrbitGraph {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    /// Connected components as sorted lists of vertex indices, ordered by
    /// least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.cells.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices whose removal disconnects their component.
    pub fn cutvertices(&self) -> Vec<usize> {
        let base = self.components().len();
        (0..self.cells.len())
            .filter(|&v| {
                if self.neighbors(v).is_empty() {
                    return false;
                }
                let reduced = self.without_vertex(v);
                // removing v drops one vertex; more components than before
                // (after accounting for v's own component) means a cut
                reduced.components().len() > base
            })
            .collect()
    }

    /// The graph minus vertex v, keeping original indexing via placeholder
    /// empty cell (v becomes isolated and is excluded from components by the
    /// caller when needed).
    fn without_vertex(&self, v: usize) -> OrbitGraph {
        let mut cells = self.cells.clone();
        let keep: Vec<usize> = (0..cells.len()).filter(|&i| i != v).collect();
        let edges: Vec<(usize, usize)> =
            self.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        // reindex
        let mut remap = vec![usize::MAX; cells.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let cells: Vec<Vec<usize>> = keep.iter().map(|&i| std::mem::take(&mut cells[i])).collect();
        let edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(a, b)| (remap[a], remap[b])).collect();
        let orientations = vec![(false, false); edges.len()];
        OrbitGraph { cells, edges, orientations }
    }
}

pub fn orbit_graph(sp: &StructuredPoset) -> OrbitGraph {
    let k = sp.frame.len();
    let mut edges = Vec::new();
    let mut orientations = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if direct_interdependence(sp, i, j).unwrap() {
                let below_ij = sp.frame.cells()[i]
                    .iter()
                    .any(|&x| sp.frame.cells()[j].iter().any(|&y| sp.poset.lt(x, y)));
                let below_ji = sp.frame.cells()[j]
                    .iter()
                    .any(|&y| sp.frame.cells()[i].iter().any(|&x| sp.poset.lt(y, x)));
                edges.push((i, j));
                orientations.push((below_ij, below_ji));
            }
        }
    }
    OrbitGraph { cells: sp.frame.cells().to_vec(), edges, orientations }
}

/// Connected components of the orbit graph as sets of frame-cell indices.
pub fn interdependent_orbit_unions(og: &OrbitGraph) -> Vec<Vec<usize>> {
    og.components()
}

/// The element sets of the interdependent orbit unions, sorted.
pub fn union_element_sets(og: &OrbitGraph) -> Vec<Vec<usize>> {
    og.components()
        .iter()
        .map(|comp| {
            let mut els: Vec<usize> = comp.iter().flat_map(|&c| og.cells[c].clone()).collect();
            els.sort_unstable();
            els
        })
        .collect()
}

/// Checks |Aut(P)| against the product over its multi-element interdependent
/// orbit unions (under the natural frame) of the frame-automorphism orders
/// of the induced sub-posets.
pub fn factorization_check(p: &Poset) -> (BigUint, BigUint, bool) {
    let lhs = aut_group(p).order();
    let sp = StructuredPoset::natural(p.clone());
    let og = orbit_graph(&sp);
    let mut rhs = BigUint::one();
    for union in union_element_sets(&og) {
        if union.len() < 2 {
            continue;
        }
        let (sub, map) = p.induced(&union);
        // the natural-frame cells restricted to the union, in sub indices
        let cell_of = sp.frame.cell_of(p.size());
        let sub_cell_of: Vec<usize> = map.iter().map(|&x| cell_of[x]).collect();
        rhs *= aut_group_cell_preserving(&sub, &sub_cell_of).order();
    }
    let equal = lhs == rhs;
    (lhs, rhs, equal)
}

pub fn is_tight(sp: &StructuredPoset) -> bool {
    sp.tight
}

/// Splits every cell into its frame-automorphism orbits, iterating to a
/// fixpoint. The result has every cell a single orbit; slack is unaffected.
pub fn tighten(sp: &StructuredPoset) -> StructuredPoset {
    let mut cells = sp.frame.cells().to_vec();
    loop {
        let frame = OrbitFrame::new(&sp.poset, cells.clone()).expect("refinement stays valid");
        let g = aut_group_cell_preserving(&sp.poset, &frame.cell_of(sp.size()));
        let mut orbits = g.orbits();
        orbits.sort_by_key(|o| o[0]);
        if orbits == frame.cells() {
            return StructuredPoset::new(sp.poset.clone(), frame);
        }
        cells = orbits;
    }
}

/// True when the width is at least 2 and the sub-poset induced on every
/// consecutive rank pair is isomorphic to the standard example of the width
/// or to that many disjoint 2-chains.
pub fn is_max_locked(p: &Poset) -> bool {
    let w = p.width();
    if w < 2 {
        return false;
    }
    let levels = p.rank_levels();
    let s_w = crate::catalog::standard_example(w);
    let w_c2 = crate::catalog::disjoint_two_chains(w).expect("w >= 2");
    for pair in levels.windows(2) {
        let mut both: Vec<usize> = pair[0].clone();
        both.extend_from_slice(&pair[1]);
        if both.len() != 2 * w {
            return false;
        }
        let (sub, _) = p.induced(&both);
        let ok = s_w.as_ref().map(|s| find_isomorphism(&sub, s).is_some()).unwrap_or(false)
            || find_isomorphism(&sub, &w_c2).is_some();
        if !ok {
            return false;
        }
    }
    true
}

/// A cycle in the orbit graph whose consecutive cells pairwise induce the
/// standard example or disjoint 2-chains, with the forced element
/// correspondence obtained by going once around.
#[derive(Debug, Clone)]
pub struct LockCycleReport {
    /// cell indices in cycle order, starting at the least
    pub cycle: Vec<usize>,
    /// common cell size
    pub m: usize,
    /// (x, y): starting at x in the first cell, the forced walk returns to y
    pub locked_pairs: Vec<(usize, usize)>,
}

/// For two cells inducing the standard example or disjoint 2-chains, the
/// forced partner of x in `to`: with matching comparabilities (disjoint
/// 2-chains) the unique comparable element; otherwise (standard example) the
/// unique incomparable one. Returns None when neither pattern holds.
fn forced_partner(p: &Poset, x: usize, to: &[usize]) -> Option<usize> {
    let comp: Vec<usize> = to.iter().copied().filter(|&y| p.comparable(x, y)).collect();
    if comp.len() == 1 {
        return Some(comp[0]);
    }
    let incomp: Vec<usize> = to.iter().copied().filter(|&y| !p.comparable(x, y)).collect();
    if incomp.len() == 1 {
        return Some(incomp[0]);
    }
    None
}

/// True when the sub-poset on the two cells is the standard example or that
/// many disjoint 2-chains of their common size.
fn locked_pair(p: &Poset, a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.len() < 2 {
        return false;
    }
    let m = a.len();
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let (sub, _) = p.induced(&both);
    let s_m = crate::catalog::standard_example(m);
    let m_c2 = crate::catalog::disjoint_two_chains(m).expect("m >= 2");
    s_m.as_ref().map(|s| find_isomorphism(&sub, s).is_some()).unwrap_or(false)
        || find_isomorphism(&sub, &m_c2).is_some()
}

/// All simple cycles of the orbit graph (length ≥ 3), each reported once
/// starting at its least vertex with the smaller neighbor second; lock
/// cycles carry the forced correspondence of the first cell.
pub fn lock_cycles(sp: &StructuredPoset) -> Vec<LockCycleReport> {
    let og = orbit_graph(sp);
    let n = og.cells.len();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    // simple cycles with the least vertex first: DFS from each start over
    // vertices greater than the start
    fn dfs(
        og: &OrbitGraph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for w in og.neighbors(v) {
            if w == start && path.len() >= 3 {
                // canonical: second vertex smaller than last
                if path[1] < *path.last().unwrap() {
                    cycles.push(path.clone());
                }
            } else if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                dfs(og, start, path, on_path, cycles);
                on_path[w] = false;
                path.pop();
            }
        }
    }
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        dfs(&og, start, &mut path, &mut on_path, &mut cycles);
    }
    let mut out = Vec::new();
    for cycle in cycles {
        let k = cycle.len();
        let m = og.cells[cycle[0]].len();
        let locked = (0..k).all(|i| {
            let a = &og.cells[cycle[i]];
            let b = &og.cells[cycle[(i + 1) % k]];
            a.len() == m && locked_pair(&sp.poset, a, b)
        });
        if !locked {
            continue;
        }
        let mut locked_pairs = Vec::new();
        let mut well_defined = true;
        for &x in &og.cells[cycle[0]] {
            let mut cur = x;
            for i in 0..k {
                let next_cell = &og.cells[cycle[(i + 1) % k]];
                match forced_partner(&sp.poset, cur, next_cell) {
                    Some(y) => cur = y,
                    None => {
                        well_defined = false;
                        break;
                    }
                }
            }
            if !well_defined {
                break;
            }
            locked_pairs.push((x, cur));
        }
        if well_defined {
            out.push(LockCycleReport { cycle, m, locked_pairs });
        }
    }
    out
}

/// DOT rendering of the orbit graph: vertices `D<i>(size)`, edges annotated
/// with the witnessing comparability orientation.
pub fn orbit_graph_dot(og: &OrbitGraph) -> String {
    let mut s = String::from("graph orbit_graph {\n");
    for (i, cell) in og.cells.iter().enumerate() {
        s.push_str(&format!("  v{} [label=\"D{}({})\"];\n", i, i, cell.len()));
    }
    for (e, &(a, b)) in og.edges.iter().enumerate() {
        let (fwd, bwd) = og.orientations[e];
        let dir = match (fwd, bwd) {
            (true, true) => "both",
            (true, false) => "below",
            (false, true) => "above",
            (false, false) => "none",
        };
        s.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", a, b, dir));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        antichain, chain, crown_blown_up, no_d_endos, no_d_endos_frame, standard_example,
        transmit_drive, transmit_drive_frame,
    };
    use crate::counting::aut_order_bruteforce;
    use crate::permgroup::Permutation;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn natural_frames() {
        assert_eq!(natural_frame(&antichain(4)).cells(), &[vec![0, 1, 2, 3]]);
        assert_eq!(natural_frame(&chain(3)).len(), 3);
        let td = transmit_drive();
        assert_eq!(natural_frame(&td).cells(), &transmit_drive_frame()[..]);
    }

    #[test]
    fn frame_aut_and_restriction() {
        let p = antichain(3);
        let sp = StructuredPoset::natural(p.clone());
        assert_eq!(frame_automorphisms(&sp).order(), big(6));
        let split = StructuredPoset::new(p, OrbitFrame::singletons(3));
        assert_eq!(frame_automorphisms(&split).order(), big(1));
    }

    #[test]
    fn interdependence_basics() {
        // standard example: the two natural orbits are directly interdependent
        let s3 = standard_example(3).unwrap();
        let sp = StructuredPoset::natural(s3);
        assert_eq!(sp.frame.len(), 2);
        assert!(direct_interdependence(&sp, 0, 1).unwrap());
        // complete bipartite comparability: no incomparable pair
        let p = crate::poset_core::lexicographic_sum(
            &chain(2),
            &[antichain(2), antichain(2)],
        )
        .unwrap();
        let frame = OrbitFrame::new(&p, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let sp = StructuredPoset::new(p, frame);
        assert!(!direct_interdependence(&sp, 0, 1).unwrap());
        // no comparabilities at all
        let q = antichain(4);
        let frame = OrbitFrame::new(&q, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let sq = StructuredPoset::new(q, frame);
        assert!(!direct_interdependence(&sq, 0, 1).unwrap());
        assert!(direct_interdependence(&sq, 0, 0).is_err());
    }

    #[test]
    fn transmit_drive_unions() {
        let sp = StructuredPoset::natural(transmit_drive());
        let og = orbit_graph(&sp);
        let unions = interdependent_orbit_unions(&og);
        assert_eq!(unions.len(), 2);
        let sets = union_element_sets(&og);
        // M, A, A~, B, B~ on one side; C, C~, D, D~ on the other
        let mut u1: Vec<usize> = (0..15).collect();
        u1.sort_unstable();
        assert_eq!(sets[0], u1);
        assert_eq!(sets[1], (15..27).collect::<Vec<_>>());
    }

    #[test]
    fn factorization_on_fixtures() {
        for p in [transmit_drive(), chain(4), antichain(5), standard_example(4).unwrap()] {
            let (lhs, rhs, equal) = factorization_check(&p);
            assert!(equal, "lhs {lhs} != rhs {rhs}");
        }
        // rigid poset: empty product
        let rigid = Poset::from_covers(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let (lhs, rhs, equal) = factorization_check(&rigid);
        assert!(equal);
        assert_eq!(lhs, big(1));
        assert_eq!(rhs, big(1));
    }

    #[test]
    fn factorization_on_small_posets() {
        for p in crate::catalog::enumerate_small_posets(5).unwrap() {
            let (lhs, rhs, equal) = factorization_check(&p);
            assert!(equal, "lhs {lhs} != rhs {rhs} for {:?}", p.covers());
        }
    }

    #[test]
    fn tightness_and_tighten() {
        // natural frame of the standard example is tight
        let sp = StructuredPoset::natural(standard_example(3).unwrap());
        assert!(sp.tight);
        // rank-level frame of transmit_drive tightens to the nine orbits
        let td = transmit_drive();
        let levels = td.rank_levels();
        let frame = OrbitFrame::new(&td, levels).unwrap();
        let sp = StructuredPoset::new(td, frame);
        assert!(!sp.tight);
        let tightened = tighten(&sp);
        assert!(tightened.tight);
        assert_eq!(tightened.frame.cells(), &transmit_drive_frame()[..]);
        // blown-up crown: natural frame is not without slack
        let bc = crown_blown_up(3, 2).unwrap();
        let sp = StructuredPoset::natural(bc);
        assert!(!sp.without_slack);
        assert!(!sp.tight);
    }

    #[test]
    fn max_locked_families() {
        for w in 3..=5 {
            assert!(is_max_locked(&standard_example(w).unwrap()), "s_{w}");
        }
        for w in 2..=5 {
            assert!(is_max_locked(&crate::catalog::disjoint_two_chains(w).unwrap()), "{w}C2");
        }
        assert!(!is_max_locked(&chain(3)));
        assert!(!is_max_locked(&transmit_drive()));
        // a max-locked poset of width w has exactly w! automorphisms
        for w in 3..=4 {
            let s = standard_example(w).unwrap();
            assert_eq!(aut_order_bruteforce(&s), crate::exact::factorial(w));
        }
    }

    #[test]
    fn lock_cycle_on_fixture() {
        let p = no_d_endos(3).unwrap();
        let frame = OrbitFrame::new(&p, no_d_endos_frame(3)).unwrap();
        let sp = StructuredPoset::new(p, frame);
        assert!(sp.tight);
        let cycles = lock_cycles(&sp);
        assert!(!cycles.is_empty());
        let c = &cycles[0];
        assert_eq!(c.m, 3);
        assert_eq!(c.cycle.len(), 4);
        assert_eq!(c.locked_pairs.len(), 3);
        // the 27-element fixture has one cycle: the C, D, C~, D~ square
        let sp = StructuredPoset::natural(transmit_drive());
        let cycles = lock_cycles(&sp);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].m, 3);
        let mut verts = cycles[0].cycle.clone();
        verts.sort_unstable();
        assert_eq!(verts, vec![5, 6, 7, 8]);
        // tree-shaped (here: edgeless) orbit graph: no cycles
        let sp = StructuredPoset::natural(chain(4));
        assert!(lock_cycles(&sp).is_empty());
    }

    #[test]
    fn cutvertices_of_paths_and_stars() {
        // path A - B - C realized as cells of a fence-like poset is overkill;
        // test the graph operations directly
        let og = OrbitGraph {
            cells: vec![vec![0], vec![1], vec![2]],
            edges: vec![(0, 1), (1, 2)],
            orientations: vec![(true, false), (true, false)],
        };
        assert_eq!(og.cutvertices(), vec![1]);
        assert!(og.is_connected());
        let triangle = OrbitGraph {
            cells: vec![vec![0], vec![1], vec![2]],
            edges: vec![(0, 1), (0, 2), (1, 2)],
            orientations: vec![(true, false); 3],
        };
        assert!(triangle.cutvertices().is_empty());
    }

    #[test]
    fn restriction_image_orders() {
        // on the standard example, restricting the full frame group to the
        // minimal cell is faithful
        let sp = StructuredPoset::natural(standard_example(4).unwrap());
        let lam = restriction_image(&sp, &[0]);
        assert_eq!(lam.order(), big(24));
    }

    #[test]
    fn identity_extension_of_union_automorphisms() {
        // any frame automorphism of one union extends by the identity
        let p = transmit_drive();
        let sp = StructuredPoset::natural(p.clone());
        let og = orbit_graph(&sp);
        let sets = union_element_sets(&og);
        let cell_of = sp.frame.cell_of(p.size());
        for set in &sets {
            let (sub, map) = p.induced(set);
            let sub_cells: Vec<usize> = map.iter().map(|&x| cell_of[x]).collect();
            let g = aut_group_cell_preserving(&sub, &sub_cells);
            for gen in g.generators() {
                let mut img: Vec<usize> = (0..p.size()).collect();
                for (i, &x) in map.iter().enumerate() {
                    img[x] = map[gen.apply(i)];
                }
                let ext = Permutation::from_images(img).unwrap();
                for a in 0..p.size() {
                    for b in 0..p.size() {
                        assert_eq!(p.lt(a, b), p.lt(ext.apply(a), ext.apply(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output_is_stable() {
        let sp = StructuredPoset::natural(standard_example(3).unwrap());
        let og = orbit_graph(&sp);
        let dot = orbit_graph_dot(&og);
        assert!(dot.contains("D0(3)"));
        assert!(dot.contains("v0 -- v1"));
        assert_eq!(dot, orbit_graph_dot(&og));
    }
}
