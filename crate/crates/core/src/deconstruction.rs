//! Prune-and-compact deconstruction of tight interdependent orbit unions:
//! removing a noncutvertex cell, collapsing the autonomous antichains it
//! leaves behind, the residual structured set, the order factorization, the
//! separation partition, and full deconstruction sequences.

use num_bigint::BigUint;

use crate::orbit_structure::{orbit_graph, OrbitFrame, OrbitGraph, StructuredPoset};
use crate::permgroup::Permutation;
use crate::{Error, Result};

pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoncutPolicy {
    /// lowest cell index
    First,
    /// largest cell, ties by lowest index
    MaxCell,
    /// smallest cell, ties by lowest index
    MinCell,
}

/// Bookkeeping for one removal. Cell positions refer to `order`, which lists
/// the input frame's cell indices relabeled so that positions `0..s` are not
/// adjacent to the removed cell, positions `s..t` are adjacent with only
/// trivial autonomous antichains, positions `t..len-1` are adjacent with a
/// nontrivial one, and the last position is the removed cell itself.
#[derive(Debug, Clone)]
pub struct DeconstructionContext {
    /// frame-cell index of the removed cell in the input structured set
    pub removed_cell: usize,
    /// relabeled cell order (input frame indices); removed cell last
    pub order: Vec<usize>,
    /// first adjacent position
    pub s: usize,
    /// first adjacent position whose antichain partition is nontrivial
    pub t: usize,
    /// autonomous antichain partitions of the adjacent cells, in `order`
    /// positions s..len-1, as original element sets
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// cell counts of the partitions, aligned with `partitions`
    pub ell: Vec<usize>,
}

impl DeconstructionContext {
    /// Sizes of all nontrivial antichain cells encountered at this step.
    pub fn nontrivial_antichain_sizes(&self) -> Vec<usize> {
        self.partitions
            .iter()
            .flat_map(|parts| parts.iter().map(|c| c.len()).filter(|&l| l > 1))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct DeconstructionStep {
    pub context: DeconstructionContext,
    /// the pruned-and-compacted set with its inherited frame
    pub u_n: StructuredPoset,
    /// elements of u_n in the input set, by u_n index
    pub u_n_map: Vec<usize>,
    /// the residual: adjacent cells plus the removed cell, frame tightened
    pub q: StructuredPoset,
    /// elements of q in the input set, by q index
    pub q_map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DeconstructionSequence {
    pub steps: Vec<DeconstructionStep>,
    pub final_residual: StructuredPoset,
    /// minimum size over all nontrivial antichain cells of all steps;
    /// None when every encountered antichain cell was a singleton
    pub b: Option<usize>,
}

/// Picks a noncutvertex of a connected orbit graph with at least three
/// vertices, deterministically per policy.
pub fn choose_noncutvertex(og: &OrbitGraph, policy: NoncutPolicy) -> Result<usize> {
    if !og.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = og.cells.len();
    if n < 3 {
        return Err(Error::ParamOutOfRange(format!("need at least 3 cells, got {n}")));
    }
    let cuts = og.cutvertices();
    let candidates: Vec<usize> = (0..n).filter(|v| !cuts.contains(v)).collect();
    // a connected graph always has a noncutvertex (any leaf of a spanning tree)
    let pick = match policy {
        NoncutPolicy::First => candidates[0],
        NoncutPolicy::MaxCell => {
            *candidates.iter().max_by_key(|&&v| (og.cells[v].len(), n - v)).unwrap()
        }
        NoncutPolicy::MinCell => {
            *candidates.iter().min_by_key(|&&v| (og.cells[v].len(), v)).unwrap()
        }
    };
    Ok(pick)
}

/// Removes cell `d_n` from a tight interdependent orbit union and builds the
/// two halves of the recursion: the kept component with each antichain cell
/// collapsed to its representative, and the residual on the adjacent cells
/// plus `d_n` with the antichain cells as frame, tightened.
pub fn prune_and_compact(u: &StructuredPoset, d_n: usize) -> Result<DeconstructionStep> {
    if !u.tight {
        return Err(Error::NotTight("input of prune_and_compact".into()));
    }
    let og = orbit_graph(u);
    if !og.is_connected() {
        return Err(Error::NotConnected);
    }
    if d_n >= u.frame.len() {
        return Err(Error::IndexOutOfRange(d_n));
    }
    if og.cutvertices().contains(&d_n) {
        return Err(Error::Cutvertex(d_n));
    }
    let p = &u.poset;
    let cells = u.frame.cells();
    let removed: &[usize] = &cells[d_n];
    let kept_elements: Vec<usize> =
        (0..p.size()).filter(|x| !removed.contains(x)).collect();

    // classify the remaining cells and compute their antichain partitions
    // inside the ambient set without the removed cell
    let mut nonadjacent: Vec<usize> = Vec::new();
    let mut adjacent_trivial: Vec<usize> = Vec::new();
    let mut adjacent_nontrivial: Vec<usize> = Vec::new();
    let mut parts_of: Vec<Option<Vec<Vec<usize>>>> = vec![None; cells.len()];
    for j in 0..cells.len() {
        if j == d_n {
            continue;
        }
        let parts = p.maximal_autonomous_antichain_partition(&kept_elements, &cells[j])?;
        let nontrivial = parts.iter().any(|c| c.len() > 1);
        if og.has_edge(j, d_n) {
            if nontrivial {
                adjacent_nontrivial.push(j);
            } else {
                adjacent_trivial.push(j);
            }
        } else {
            // a cell without direct interdependence to the removed one
            // cannot gain a nontrivial autonomous antichain
            if nontrivial {
                return Err(Error::NotTight(format!(
                    "cell {j} gained slack without adjacency to {d_n}"
                )));
            }
            nonadjacent.push(j);
        }
        parts_of[j] = Some(parts);
    }
    let s = nonadjacent.len();
    let t = s + adjacent_trivial.len();
    let mut order = nonadjacent;
    order.extend(adjacent_trivial);
    order.extend(adjacent_nontrivial);
    let partitions: Vec<Vec<Vec<usize>>> =
        order[s..].iter().map(|&j| parts_of[j].clone().unwrap()).collect();
    let ell: Vec<usize> = partitions.iter().map(|ps| ps.len()).collect();
    order.push(d_n);

    // pruned and compacted: nonadjacent cells whole, adjacent cells reduced
    // to one representative (least element) per antichain cell
    let mut u_n_elements: Vec<usize> = Vec::new();
    for (pos, &j) in order[..order.len() - 1].iter().enumerate() {
        if pos < s {
            u_n_elements.extend_from_slice(&cells[j]);
        } else {
            for part in parts_of[j].as_ref().unwrap() {
                u_n_elements.push(part[0]);
            }
        }
    }
    u_n_elements.sort_unstable();
    let (u_n_poset, u_n_map) = p.induced(&u_n_elements);
    let cell_of = u.frame.cell_of(p.size());
    let u_n_cells = restrict_cells(&u_n_map, &cell_of);
    let u_n_frame = OrbitFrame::new(&u_n_poset, u_n_cells)?;
    let u_n = StructuredPoset::new(u_n_poset, u_n_frame);
    if !u_n.tight {
        return Err(Error::NotTight("pruned-and-compacted set".into()));
    }
    if !orbit_graph(&u_n).is_connected() {
        return Err(Error::NotConnected);
    }

    // residual: adjacent cells plus the removed one; frame = the antichain
    // cells of the adjacent side plus the removed cell, then tightened
    let mut q_elements: Vec<usize> = removed.to_vec();
    for &j in &order[s..order.len() - 1] {
        q_elements.extend_from_slice(&cells[j]);
    }
    q_elements.sort_unstable();
    let (q_poset, q_map) = p.induced(&q_elements);
    let to_local: std::collections::HashMap<usize, usize> =
        q_map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut q_cells: Vec<Vec<usize>> = vec![removed.iter().map(|x| to_local[x]).collect()];
    for &j in &order[s..order.len() - 1] {
        for part in parts_of[j].as_ref().unwrap() {
            q_cells.push(part.iter().map(|x| to_local[x]).collect());
        }
    }
    let q_frame = OrbitFrame::new(&q_poset, q_cells)?;
    let q = crate::orbit_structure::tighten(&StructuredPoset::new(q_poset, q_frame));
    if !q.tight {
        return Err(Error::NotTight("residual structured set".into()));
    }

    let context = DeconstructionContext { removed_cell: d_n, order, s, t, partitions, ell };
    Ok(DeconstructionStep { context, u_n, u_n_map, q, q_map })
}

fn restrict_cells(subset_map: &[usize], cell_of: &[usize]) -> Vec<Vec<usize>> {
    let mut by_cell: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (local, &orig) in subset_map.iter().enumerate() {
        by_cell.entry(cell_of[orig]).or_default().push(local);
    }
    by_cell.into_values().collect()
}

/// Representative map of the compaction: each element of the kept side goes
/// to the least element of its antichain cell (or itself when kept whole).
fn representative_map(u: &StructuredPoset, step: &DeconstructionStep) -> Vec<usize> {
    let n = u.poset.size();
    let mut rep: Vec<usize> = (0..n).collect();
    for parts in &step.context.partitions {
        for part in parts {
            for &x in part {
                rep[x] = part[0];
            }
        }
    }
    rep
}

/// Checks the order factorization for the removal of `d_n`: the number of
/// compacted actions on the kept side times the number of frame
/// automorphisms acting trivially there equals the whole group order.
pub fn verify_factorization(
    u: &StructuredPoset,
    d_n: usize,
    cap: usize,
) -> Result<(BigUint, BigUint, BigUint, bool)> {
    let step = prune_and_compact(u, d_n)?;
    let g = crate::orbit_structure::frame_automorphisms(u);
    let elements = g.elements(cap)?;
    let rep = representative_map(u, &step);
    let local: std::collections::HashMap<usize, usize> =
        step.u_n_map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut images: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut trivial = 0u64;
    for phi in &elements {
        // the compacted action: follow phi, then collapse to representatives
        let img: Vec<usize> =
            step.u_n_map.iter().map(|&x| local[&rep[phi.apply(x)]]).collect();
        let is_id = img.iter().enumerate().all(|(i, &y)| i == y);
        if is_id {
            trivial += 1;
        }
        images.insert(img);
    }
    let lhs = BigUint::from(elements.len());
    let left = BigUint::from(images.len());
    let right = BigUint::from(trivial);
    let equal = lhs == &left * &right;
    Ok((lhs, left, right, equal))
}

/// The orbits of the residual's frame automorphisms that lie inside the
/// removed cell, as original element sets. Also asserts that every frame
/// automorphism of the whole union permutes these orbit sets.
pub fn separation_partition(
    u: &StructuredPoset,
    d_n: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let step = prune_and_compact(u, d_n)?;
    let residual_group = crate::orbit_structure::frame_automorphisms(&step.q);
    let removed: &[usize] = &u.frame.cells()[d_n];
    let mut partition: Vec<Vec<usize>> = residual_group
        .orbits()
        .into_iter()
        .map(|orb| orb.into_iter().map(|i| step.q_map[i]).collect::<Vec<usize>>())
        .filter(|orb| orb.iter().all(|x| removed.contains(x)))
        .collect();
    partition.sort_by_key(|c| c[0]);

    // every frame automorphism of the union must respect the partition
    let cell_id: std::collections::HashMap<usize, usize> = partition
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
        .collect();
    let g = crate::orbit_structure::frame_automorphisms(u);
    for phi in g.elements(cap)? {
        for cell in &partition {
            let target = cell_id[&phi.apply(cell[0])];
            for &x in cell {
                if cell_id[&phi.apply(x)] != target {
                    return Err(Error::NotTight(
                        "separation partition not respected".into(),
                    ));
                }
            }
        }
    }
    Ok(partition)
}

/// Repeatedly removes a policy-chosen noncutvertex until two cells remain.
/// When the input has fewer than three cells, the sequence is empty and the
/// final residual is the input itself.
pub fn deconstruction_sequence(
    u: &StructuredPoset,
    policy: NoncutPolicy,
) -> Result<DeconstructionSequence> {
    let mut current = u.clone();
    let mut steps: Vec<DeconstructionStep> = Vec::new();
    let mut b: Option<usize> = None;
    while current.frame.len() >= 3 {
        let og = orbit_graph(&current);
        let d_n = choose_noncutvertex(&og, policy)?;
        let step = prune_and_compact(&current, d_n)?;
        for size in step.context.nontrivial_antichain_sizes() {
            b = Some(b.map_or(size, |cur| cur.min(size)));
        }
        current = step.u_n.clone();
        steps.push(step);
    }
    Ok(DeconstructionSequence { steps, final_residual: current, b })
}

/// Extends a permutation of a subset (given in local indices with its
/// element map) by the identity on the rest of an n-element set.
pub fn extend_by_identity(n: usize, local: &Permutation, map: &[usize]) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    for (i, &x) in map.iter().enumerate() {
        img[x] = map[local.apply(i)];
    }
    Permutation::from_images(img).expect("extension of a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{crown_blown_up, no_d_endos, no_d_endos_frame, transmit_drive};
    use crate::orbit_structure::{interdependent_orbit_unions, union_element_sets};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn fixture_union() -> StructuredPoset {
        let p = no_d_endos(3).unwrap();
        let frame = OrbitFrame::new(&p, no_d_endos_frame(3)).unwrap();
        let sp = StructuredPoset::new(p, frame);
        assert!(sp.tight);
        sp
    }

    #[test]
    fn noncut_choice_policies() {
        let path = OrbitGraph {
            cells: vec![vec![0], vec![1, 2], vec![3, 4, 5]],
            edges: vec![(0, 1), (1, 2)],
            orientations: vec![(true, false); 2],
        };
        assert_eq!(choose_noncutvertex(&path, NoncutPolicy::First).unwrap(), 0);
        assert_eq!(choose_noncutvertex(&path, NoncutPolicy::MaxCell).unwrap(), 2);
        assert_eq!(choose_noncutvertex(&path, NoncutPolicy::MinCell).unwrap(), 0);
        let star = OrbitGraph {
            cells: vec![vec![0], vec![1], vec![2], vec![3]],
            edges: vec![(0, 1), (0, 2), (0, 3)],
            orientations: vec![(true, false); 3],
        };
        // never the center
        assert_eq!(choose_noncutvertex(&star, NoncutPolicy::First).unwrap(), 1);
        let disconnected = OrbitGraph {
            cells: vec![vec![0], vec![1], vec![2]],
            edges: vec![],
            orientations: vec![],
        };
        assert!(matches!(
            choose_noncutvertex(&disconnected, NoncutPolicy::First),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn prune_and_compact_fixture() {
        let sp = fixture_union();
        // remove the last cell (elements 9..12); it is a noncutvertex
        let step = prune_and_compact(&sp, 3).unwrap();
        assert!(step.u_n.tight);
        assert!(step.q.tight);
        assert_eq!(step.context.removed_cell, 3);
        assert_eq!(*step.context.order.last().unwrap(), 3);
        // the kept side keeps 3 cells
        assert_eq!(step.u_n.frame.len(), 3);
        // overlap of the two halves is exactly the representatives of the
        // adjacent cells
        let u_set: std::collections::BTreeSet<usize> = step.u_n_map.iter().copied().collect();
        let q_set: std::collections::BTreeSet<usize> = step.q_map.iter().copied().collect();
        let overlap: Vec<usize> = u_set.intersection(&q_set).copied().collect();
        let reps: Vec<usize> = step
            .context
            .partitions
            .iter()
            .flat_map(|ps| ps.iter().map(|c| c[0]))
            .filter(|x| q_set.contains(x))
            .collect();
        let mut reps = reps;
        reps.sort_unstable();
        assert_eq!(overlap, reps);
    }

    #[test]
    fn factorization_fixture() {
        let sp = fixture_union();
        let (lhs, left, right, equal) = verify_factorization(&sp, 3, DEFAULT_ENUM_CAP).unwrap();
        assert!(equal);
        assert_eq!(lhs, big(6));
        assert_eq!(left, big(6));
        assert_eq!(right, big(1));
    }

    #[test]
    fn factorization_blown_up_crown() {
        // 6-crown blown up by 2-antichains: remove the top orbit
        let p = crown_blown_up(3, 2).unwrap();
        let sp = crate::orbit_structure::tighten(&StructuredPoset::natural(p));
        // natural frame has slack; use the rank levels as a 2-cell frame and
        // the bottom/top orbits stay single cells after tightening
        assert_eq!(sp.frame.len(), 2);
        if !sp.tight {
            // the blown-up crown is genuinely slack-ridden; the relevant
            // factorization check lives in prune territory only for tight
            // inputs, so this instance only exercises the error path
            assert!(matches!(prune_and_compact(&sp, 0), Err(Error::NotTight(_))));
        }
    }

    #[test]
    fn separation_partition_fixture() {
        let sp = fixture_union();
        let parts = separation_partition(&sp, 3, DEFAULT_ENUM_CAP).unwrap();
        // residual group trivial: singletons
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn sequence_on_fixture() {
        let sp = fixture_union();
        let seq = deconstruction_sequence(&sp, NoncutPolicy::First).unwrap();
        assert_eq!(seq.steps.len(), 2);
        assert_eq!(seq.final_residual.frame.len(), 2);
        // all antichain cells trivial in this fixture
        assert_eq!(seq.b, None);
    }

    #[test]
    fn sequence_on_transmit_drive_component() {
        let p = transmit_drive();
        let sp = StructuredPoset::natural(p.clone());
        let og = orbit_graph(&sp);
        let unions = interdependent_orbit_unions(&og);
        let sets = union_element_sets(&og);
        assert_eq!(unions.len(), 2);
        // first component: 5 cells, 15 elements
        let (sub, map) = p.induced(&sets[0]);
        let cell_of = sp.frame.cell_of(p.size());
        let cells = restrict_cells(&map, &cell_of);
        let frame = OrbitFrame::new(&sub, cells).unwrap();
        let u1 = StructuredPoset::new(sub, frame);
        assert!(u1.tight);
        assert_eq!(u1.frame.len(), 5);
        let seq = deconstruction_sequence(&u1, NoncutPolicy::First).unwrap();
        assert_eq!(seq.steps.len(), 3);
        assert_eq!(seq.final_residual.frame.len(), 2);
        // every step's factorization holds
        let mut current = u1;
        for step in &seq.steps {
            let (_, _, _, equal) =
                verify_factorization(&current, step.context.removed_cell, DEFAULT_ENUM_CAP)
                    .unwrap();
            assert!(equal);
            current = step.u_n.clone();
        }
    }

    #[test]
    fn two_cell_input_is_trivial_sequence() {
        let p = crate::catalog::standard_example(3).unwrap();
        let sp = StructuredPoset::natural(p);
        let seq = deconstruction_sequence(&sp, NoncutPolicy::First).unwrap();
        assert!(seq.steps.is_empty());
        assert_eq!(seq.final_residual.frame.len(), 2);
        assert_eq!(seq.b, None);
    }

    #[test]
    fn equal_antichain_cell_sizes() {
        // within each adjacent cell's partition, all cells have equal size
        let sp = fixture_union();
        for d_n in 0..sp.frame.len() {
            let og = orbit_graph(&sp);
            if og.cutvertices().contains(&d_n) {
                continue;
            }
            let step = prune_and_compact(&sp, d_n).unwrap();
            for parts in &step.context.partitions {
                let sizes: Vec<usize> = parts.iter().map(|c| c.len()).collect();
                assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{sizes:?}");
            }
        }
    }
}
