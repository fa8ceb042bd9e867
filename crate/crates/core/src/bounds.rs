//! Certified exponent bounds: the nesting constant 1.7376 with its exact
//! reproduction, the interdependent-orbit-union bound, the combination
//! arithmetic for deconstruction steps, the primitive-orbit bound, and the
//! width-11 decision pipeline. All exponents are exact rationals and every
//! claimed inequality is checkable by integer power comparison.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{aut_group, constructive_endo_lower_bound};
use crate::exact::{le_2_pow, lg_lower, lg_upper, rat};
use crate::orbit_structure::{
    interdependent_orbit_unions, is_max_locked, lock_cycles, orbit_graph, restriction_image,
    union_element_sets, LockCycleReport, OrbitFrame, StructuredPoset,
};
use crate::permgroup::{exceptional_lookup, PrimitiveNesting};
use crate::poset_core::Poset;
use crate::{Error, Result};

/// The exponent constant for transitive groups with a proper primitive
/// nesting, as an exact rational (1.7376).
pub fn nesting_constant() -> BigRational {
    rat(17376, 10000)
}

/// Tail allowance for nesting levels beyond the eighth (0.0108).
fn tail_constant() -> BigRational {
    rat(108, 10000)
}

/// One node in a certificate derivation: the rule applied, the constants it
/// used, and its sub-derivations.
#[derive(Debug, Clone)]
pub struct DerivationStep {
    pub rule: String,
    pub constants: Vec<(String, BigRational)>,
    pub subs: Vec<DerivationStep>,
}

impl DerivationStep {
    fn leaf(rule: &str, constants: Vec<(String, BigRational)>) -> DerivationStep {
        DerivationStep { rule: rule.into(), constants, subs: Vec::new() }
    }
}

/// A certified claim |Aut_frame(U)| ≤ 2^{exponent · |U|}.
#[derive(Debug, Clone)]
pub struct BoundCertificate {
    pub target: String,
    pub n: usize,
    pub exponent: BigRational,
    pub derivation: DerivationStep,
    pub claim: String,
}

/// A refused certificate is not an error: the analysis ran, the hypotheses
/// failed, and the refusal carries what was found.
#[derive(Debug, Clone)]
pub struct Refusal {
    pub reason: String,
    pub cell: Option<usize>,
    pub level: Option<usize>,
    pub lock_cycles: Vec<LockCycleReport>,
}

#[derive(Debug, Clone)]
pub enum BoundOutcome {
    Certified(BoundCertificate),
    Refused(Refusal),
}

/// Exact check of a certificate's claim against an exactly known order.
pub fn check_certificate(order: &BigUint, cert: &BoundCertificate) -> bool {
    le_2_pow(order, &cert.exponent, cert.n)
}

/// The exponent of a proper primitive nesting: Σ d_j / |B_j| over the first
/// eight levels, with deeper levels absorbed into the geometric tail
/// allowance. Always at most the nesting constant.
pub fn nesting_exponent(nest: &PrimitiveNesting) -> Result<BigRational> {
    for (j, level) in nest.levels.iter().enumerate() {
        if !level.proper {
            return Err(Error::ImproperNesting { cell: usize::MAX, level: j });
        }
    }
    let mut c = BigRational::zero();
    for (j, level) in nest.levels.iter().enumerate().take(8) {
        let block_size = BigRational::from_integer(nest.blocks[j].len().into());
        c += level.d_constant.clone() / block_size;
    }
    if nest.levels.len() > 8 {
        c += tail_constant();
    }
    assert!(c <= nesting_constant(), "nesting exponent exceeds the proved constant");
    Ok(c)
}

/// The reproduction of the nesting constant: the exact maximum of the
/// depth-8 level sum, the tail allowance, and their total.
#[derive(Debug, Clone)]
pub struct NestingConstantReport {
    pub levels_max: BigRational,
    pub tail: BigRational,
    pub total: BigRational,
}

/// Maximizes Σ_{j=0}^{7} d_j · Π_{i<j} 1/f_i over all degree sequences: the
/// factorial constants for degrees 2..5, the tabulated per-degree maxima,
/// and the untabulated option (d = 1, factor ≥ 14). Dominated options
/// (untabulated degrees that share a degree with a table entry or exceed 14)
/// are absorbed by the listed ones.
pub fn verify_controllednest_constant() -> NestingConstantReport {
    let mut options: Vec<(BigRational, BigRational)> = vec![
        (rat(1, 2), rat(2, 1)),
        (rat(8617, 10000), rat(3, 1)),
        (rat(11463, 10000), rat(4, 1)),
        (rat(13814, 10000), rat(5, 1)),
        (BigRational::one(), rat(14, 1)),
    ];
    let mut table_degrees: Vec<usize> =
        crate::permgroup::exceptional_table().iter().map(|e| e.degree).collect();
    table_degrees.sort_unstable();
    table_degrees.dedup();
    for d in table_degrees {
        if d <= 5 {
            // the factorial option already dominates small degrees
            continue;
        }
        let best = exceptional_lookup(d)
            .into_iter()
            .map(|e| e.lg_over_n_bound)
            .max()
            .expect("degree came from the table");
        options.push((best, BigRational::from_integer(d.into())));
    }
    let mut best = BigRational::zero();
    for _ in 0..8 {
        best = options
            .iter()
            .map(|(d, f)| d + &best / f)
            .max()
            .expect("options nonempty");
    }
    let tail = tail_constant();
    let total = &best + &tail;
    assert!(best <= rat(17268, 10000), "level maximum exceeds 1.7268");
    assert!(total <= nesting_constant(), "total exceeds 1.7376");
    NestingConstantReport { levels_max: best, tail, total }
}

/// Checks that every primitive nesting of the restriction group on cell
/// `cell_idx` is proper, by inspecting every cover pair in the lattice of
/// blocks through the base point (blocks through other points are images of
/// these). Conservative: it inspects all cover pairs, a superset of the
/// levels any single nesting uses.
fn check_proper_nestings(
    lam: &crate::permgroup::PermGroup,
    cell_idx: usize,
) -> std::result::Result<(), Refusal> {
    let blocks = match lam.all_blocks_containing(0) {
        Ok(b) => b,
        Err(_) => {
            return Err(Refusal {
                reason: "restriction group is not transitive on its cell".into(),
                cell: Some(cell_idx),
                level: None,
                lock_cycles: Vec::new(),
            })
        }
    };
    // sorted by size; a cover pair is a containment with nothing between
    let mut sorted: Vec<&Vec<usize>> = blocks.iter().collect();
    sorted.sort_by_key(|b| b.len());
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.contains(x));
    for (bi, b) in sorted.iter().enumerate() {
        for c in sorted.iter().skip(bi + 1) {
            if c.len() == b.len() || !contains(c, b) {
                continue;
            }
            let intermediate = sorted.iter().any(|m| {
                m.len() > b.len() && m.len() < c.len() && contains(m, b) && contains(c, m)
            });
            if intermediate {
                continue;
            }
            let degree = c.len() / b.len();
            if degree < 6 {
                continue;
            }
            if let Ok(action) = lam.induced_block_action(b, c) {
                if action.contains_alternating() {
                    let level = sorted.iter().filter(|m| m.len() < b.len()).count();
                    return Err(Refusal {
                        reason: format!(
                            "level action on {degree} cells contains its alternating group"
                        ),
                        cell: Some(cell_idx),
                        level: Some(level),
                        lock_cycles: Vec::new(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Certified exponent for a tight interdependent orbit union: the nesting
/// constant scaled by min{4/7, b/(2b−1)} for the b of a computed
/// deconstruction sequence, by 1/2 for two-cell unions, and by the limit 1/2
/// when every encountered antichain was trivial (the bound holds for every b
/// simultaneously, so the limit constant applies).
pub fn iou_bound(u: &StructuredPoset) -> Result<BoundOutcome> {
    if !u.tight {
        return Err(Error::NotTight("iou_bound input".into()));
    }
    let og = orbit_graph(u);
    if !og.is_connected() {
        return Err(Error::NotConnected);
    }
    // properness of every restriction group's primitive nestings
    for i in 0..u.frame.len() {
        let lam = restriction_image(u, &[i]);
        if let Err(refusal) = check_proper_nestings(&lam, i) {
            return Ok(BoundOutcome::Refused(refusal));
        }
    }
    let n = u.size();
    let base = nesting_constant();
    let (fraction, fraction_note, b_note): (BigRational, &str, String) = if u.frame.len() == 2 {
        (rat(1, 2), "two-cell union", "not used".into())
    } else {
        let seq =
            crate::deconstruction::deconstruction_sequence(u, crate::deconstruction::NoncutPolicy::First)?;
        match seq.b {
            None => (rat(1, 2), "limit over all b (no nontrivial antichain)", "infinite".into()),
            Some(b) => {
                let frac = rat(4, 7).min(rat(b as i64, 2 * b as i64 - 1));
                (frac, "min{4/7, b/(2b-1)}", format!("{b}"))
            }
        }
    };
    let exponent = &fraction * &base;
    let derivation = DerivationStep {
        rule: "union bound: scaled nesting constant".into(),
        constants: vec![
            ("nesting constant".into(), base.clone()),
            ("scale".into(), fraction.clone()),
        ],
        subs: vec![DerivationStep::leaf(
            fraction_note,
            vec![("b".into(), b_note.parse::<i64>().map(|v| rat(v, 1)).unwrap_or_else(|_| rat(0, 1)))],
        )],
    };
    let claim = format!(
        "|Aut_frame(U)| <= 2^({}/{} * {})",
        exponent.numer(),
        exponent.denom(),
        n
    );
    Ok(BoundOutcome::Certified(BoundCertificate {
        target: format!("{n}-element union with {} cells", u.frame.len()),
        n,
        exponent,
        derivation,
        claim,
    }))
}

/// Data for the combination step of one deconstruction removal.
#[derive(Debug, Clone)]
pub struct ExpolemData {
    /// |U|
    pub u_size: usize,
    /// |U_m| of the pruned-and-compacted set
    pub u_m_size: usize,
    /// |Aut_frame(U_m)| (or of the supplied subgroup's compacted action)
    pub u_m_order: BigUint,
    /// (|D_j|, |Λ(D_j)|) for the residual cells the hypotheses range over
    pub cell_orders: Vec<(usize, BigUint)>,
    /// minimum encountered antichain cell size (None = all trivial)
    pub min_antichain: Option<usize>,
}

/// The combination arithmetic: verifies the three hypotheses against the
/// supplied data and returns the combined exponent (b/(2b−1))·c, or the
/// strengthened min{4/7, b/(2b−1)}·c when c ≥ 1 and the 4/7 form of the
/// first hypothesis also holds.
pub fn expolem_combine(data: &ExpolemData, b: usize, c: &BigRational) -> Result<BigRational> {
    if b < 1 {
        return Err(Error::ParamOutOfRange("b must be positive".into()));
    }
    let b_frac = rat(b as i64, 2 * b as i64 - 1);
    // hypothesis 1: the compacted group obeys the scaled bound
    let hyp1 = le_2_pow(&data.u_m_order, &(&b_frac * c), data.u_m_size);
    if !hyp1 {
        return Err(Error::ParamOutOfRange(
            "hypothesis 1 fails: compacted group exceeds the scaled bound".into(),
        ));
    }
    // hypothesis 2: every residual cell restriction obeys 2^{c|D|}
    for (idx, (size, order)) in data.cell_orders.iter().enumerate() {
        if !le_2_pow(order, c, *size) {
            return Err(Error::ParamOutOfRange(format!(
                "hypothesis 2 fails on residual cell {idx}"
            )));
        }
    }
    // hypothesis 3: all antichain cells have at least b elements
    if let Some(min) = data.min_antichain {
        if min < b {
            return Err(Error::ParamOutOfRange(format!(
                "hypothesis 3 fails: antichain cell of size {min} < b = {b}"
            )));
        }
    }
    let strengthened = c >= &BigRational::one()
        && le_2_pow(&data.u_m_order, &(rat(4, 7) * c), data.u_m_size);
    let fraction = if strengthened { rat(4, 7).min(b_frac) } else { b_frac };
    Ok(fraction * c)
}

/// Certified exponent for a tight union whose cell restrictions are all
/// primitive: the whole group equals every cell restriction, so either no
/// cell carries its alternating group (0.69 route), or cell sizes differ
/// (1/2 route), or the certificate is refused with the lock-cycle analysis
/// attached.
pub fn primitive_orbit_bound(u: &StructuredPoset) -> Result<BoundOutcome> {
    if !u.tight {
        return Err(Error::NotTight("primitive_orbit_bound input".into()));
    }
    let n = u.size();
    let mut alternating_cells: Vec<usize> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for i in 0..u.frame.len() {
        let lam = restriction_image(u, &[i]);
        match lam.is_primitive() {
            Ok(true) => {}
            _ => return Err(Error::NotPrimitive(i)),
        }
        if lam.contains_alternating() {
            alternating_cells.push(i);
        }
        sizes.push(u.frame.cells()[i].len());
    }
    let min_cell = *sizes.iter().min().expect("frame nonempty");
    if alternating_cells.is_empty() {
        // |Aut| = |Λ(D)| ≤ 2^{1.38 min|D|} ≤ 2^{0.69 |U|}
        let exponent = rat(69, 100);
        let derivation = DerivationStep::leaf(
            "primitive non-alternating cells: 1.38 * min cell over |U|",
            vec![
                ("per-cell constant".into(), rat(138, 100)),
                ("min cell".into(), rat(min_cell as i64, 1)),
            ],
        );
        let claim = format!("|Aut_frame(U)| <= 2^(69/100 * {n})");
        return Ok(BoundOutcome::Certified(BoundCertificate {
            target: format!("{n}-element primitive-cell union"),
            n,
            exponent,
            derivation,
            claim,
        }));
    }
    let all_equal = sizes.windows(2).all(|w| w[0] == w[1]);
    if !all_equal {
        let exponent = rat(1, 2);
        let derivation = DerivationStep::leaf(
            "alternating cell with unequal cell sizes: |U| >= d(d+1)/2",
            vec![("d".into(), rat(sizes[alternating_cells[0]] as i64, 1))],
        );
        let claim = format!("|Aut_frame(U)| <= 2^(1/2 * {n})");
        return Ok(BoundOutcome::Certified(BoundCertificate {
            target: format!("{n}-element primitive-cell union"),
            n,
            exponent,
            derivation,
            claim,
        }));
    }
    Ok(BoundOutcome::Refused(Refusal {
        reason: "all cells equal-sized and some cell carries its alternating group".into(),
        cell: Some(alternating_cells[0]),
        level: None,
        lock_cycles: lock_cycles(u),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width11Branch {
    ManyMaxlocked,
    MaxlockedLargeW,
    SmallOrbitsBound,
    LexsumReduction,
}

#[derive(Debug, Clone)]
pub struct Width11Verdict {
    pub branch: Width11Branch,
    /// sound upper bound on lg|Aut(P)|
    pub certified_lg_aut_upper: BigRational,
    /// sound lower bound on lg|End(P)|
    pub endo_lg_lower: BigRational,
    pub ratio_conclusion: String,
}

const LG_SCALE: u32 = 1024;

/// 2^k >= n, i.e. k >= lg(n)
fn at_least_lg(k: usize, n: usize) -> bool {
    if k >= 64 {
        return true;
    }
    (1u128 << k) >= n as u128
}

/// Classifies a width-≤11 poset into the case analysis of the
/// automorphism-conjecture argument and reports the concrete inequalities
/// achieved at this size: an exact-enumeration upper bound on lg|Aut| and a
/// constructive lower bound on lg|End|.
pub fn width11_pipeline(p: &Poset) -> Result<Width11Verdict> {
    let w = p.width();
    if w > 11 {
        return Err(Error::WidthExceeded(w));
    }
    let n = p.size();
    let aut_order = aut_group(p).order();
    let certified_lg_aut_upper = lg_upper(&aut_order, LG_SCALE);

    let family = constructive_endo_lower_bound(p);
    let endo_floor = if family.verified { family.count.clone() } else { BigUint::one() };
    let endo_floor = endo_floor.max(BigUint::one());
    let endo_lg_lower = lg_lower(&endo_floor, LG_SCALE);

    // locate max-locked height-1 interdependent orbit unions
    let sp = StructuredPoset::natural(p.clone());
    let og = orbit_graph(&sp);
    let sets = union_element_sets(&og);
    let _ = interdependent_orbit_unions(&og);
    let mut locked_sizes: Vec<usize> = Vec::new();
    for set in &sets {
        if set.len() < 2 {
            continue;
        }
        let (sub, _) = p.induced(set);
        if sub.height() == 1 && is_max_locked(&sub) {
            locked_sizes.push(set.len());
        }
    }
    let locked_total: usize = locked_sizes.iter().sum();
    let biggest_locked = locked_sizes.iter().copied().max().unwrap_or(0);

    let ambient: Vec<usize> = (0..n).collect();
    let has_nontrivial_antichain = {
        let levels = p.rank_levels();
        levels.iter().any(|level| {
            p.maximal_autonomous_antichain_partition(&ambient, level)
                .map(|parts| parts.iter().any(|c| c.len() > 1))
                .unwrap_or(false)
        })
    };

    let branch = if locked_total > 0 && at_least_lg(locked_total, n) {
        // enough elements in max-locked height-1 unions; several unions use
        // the per-union ratio product, a single one uses its own ratio
        if locked_sizes.len() >= 2 {
            Width11Branch::ManyMaxlocked
        } else {
            Width11Branch::MaxlockedLargeW
        }
    } else if has_nontrivial_antichain {
        Width11Branch::LexsumReduction
    } else {
        Width11Branch::SmallOrbitsBound
    };

    let ratio_conclusion = match branch {
        Width11Branch::MaxlockedLargeW => {
            let w_big = (biggest_locked / 2).max(2);
            format!(
                "one max-locked height-1 union with {biggest_locked} elements: per-union ratio <= w!/(w-1)^w at w = {w_big}"
            )
        }
        Width11Branch::ManyMaxlocked => format!(
            "{} max-locked height-1 unions covering {} elements: ratio <= (3/4)^{}",
            locked_sizes.len(),
            locked_total,
            locked_sizes.len()
        ),
        Width11Branch::LexsumReduction => {
            "nontrivial order-autonomous antichain present: handled by the lexicographic-sum reduction".into()
        }
        Width11Branch::SmallOrbitsBound => format!(
            "lg|Aut| <= {}/{} (exact enumeration); union certificates bound tight unions by 0.993 per element",
            certified_lg_aut_upper.numer(),
            certified_lg_aut_upper.denom()
        ),
    };

    Ok(Width11Verdict { branch, certified_lg_aut_upper, endo_lg_lower, ratio_conclusion })
}

/// Convenience: builds the tight structured set of one natural
/// interdependent orbit union of `p` (by union index) for bound queries.
pub fn natural_union(p: &Poset, idx: usize) -> Result<StructuredPoset> {
    let sp = StructuredPoset::natural(p.clone());
    let og = orbit_graph(&sp);
    let sets = union_element_sets(&og);
    let set = sets.get(idx).ok_or(Error::IndexOutOfRange(idx))?;
    let (sub, map) = p.induced(set);
    let cell_of = sp.frame.cell_of(p.size());
    let mut by_cell: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (local, &orig) in map.iter().enumerate() {
        by_cell.entry(cell_of[orig]).or_default().push(local);
    }
    let frame = OrbitFrame::new(&sub, by_cell.into_values().collect())?;
    Ok(crate::orbit_structure::tighten(&StructuredPoset::new(sub, frame)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        antichain, chain, disjoint_two_chains, no_d_endos, no_d_endos_frame, standard_example,
        transmit_drive,
    };
    use crate::orbit_structure::frame_automorphisms;
    use crate::permgroup::fixtures;

    #[test]
    fn constant_reproduction() {
        let report = verify_controllednest_constant();
        assert!(report.levels_max <= rat(17268, 10000));
        assert!(report.total <= rat(17376, 10000));
        assert_eq!(report.tail, rat(108, 10000));
        // the maximum is driven by the degree-5 factorial option and is
        // close to its fixpoint
        assert!(report.levels_max > rat(17, 10));
    }

    #[test]
    fn nesting_exponents() {
        // C_4: two levels of degree 2 -> 1/2 + (1/2)/2 = 3/4
        let nest = fixtures::cyclic(4).primitive_nesting(0).unwrap();
        assert_eq!(nesting_exponent(&nest).unwrap(), rat(3, 4));
        // one primitive degree-5 level -> d_0 = 1.3814
        let nest = fixtures::symmetric(5).primitive_nesting(0).unwrap();
        assert_eq!(nesting_exponent(&nest).unwrap(), rat(13814, 10000));
        // improper: S_7 contains its alternating group on 7 >= 6 points
        let nest = fixtures::symmetric(7).primitive_nesting(0).unwrap();
        assert!(matches!(
            nesting_exponent(&nest),
            Err(Error::ImproperNesting { level: 0, .. })
        ));
    }

    #[test]
    fn iou_bound_cases() {
        // two-cell union: exponent (1/2) * 1.7376
        let sp = StructuredPoset::natural(standard_example(3).unwrap());
        match iou_bound(&sp).unwrap() {
            BoundOutcome::Certified(cert) => {
                assert_eq!(cert.exponent, rat(8688, 10000));
                let order = frame_automorphisms(&sp).order();
                assert!(check_certificate(&order, &cert));
            }
            BoundOutcome::Refused(r) => panic!("unexpected refusal: {}", r.reason),
        }
        // four-cell fixture with trivial antichains everywhere: limit 1/2
        let p = no_d_endos(3).unwrap();
        let frame = OrbitFrame::new(&p, no_d_endos_frame(3)).unwrap();
        let sp = StructuredPoset::new(p, frame);
        match iou_bound(&sp).unwrap() {
            BoundOutcome::Certified(cert) => {
                assert_eq!(cert.exponent, rat(8688, 10000));
                let order = frame_automorphisms(&sp).order();
                assert!(check_certificate(&order, &cert));
            }
            BoundOutcome::Refused(r) => panic!("unexpected refusal: {}", r.reason),
        }
        // untight input is an error
        let q = antichain(4);
        let f = OrbitFrame::new(&q, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(iou_bound(&StructuredPoset::new(q, f)).is_err());
    }

    #[test]
    fn expolem_arithmetic() {
        // b = 10, c = 1: (10/19) * 1
        let data = ExpolemData {
            u_size: 40,
            u_m_size: 20,
            u_m_order: BigUint::from(1u32),
            cell_orders: vec![(5, BigUint::from(20u32))],
            min_antichain: Some(10),
        };
        assert_eq!(
            expolem_combine(&data, 10, &BigRational::one()).unwrap(),
            rat(10, 19)
        );
        // b = 2, c = 1.7376 with both branches: min{4/7, 2/3} * c
        let data = ExpolemData {
            u_size: 30,
            u_m_size: 10,
            u_m_order: BigUint::from(2u32),
            cell_orders: vec![],
            min_antichain: Some(2),
        };
        let c = nesting_constant();
        assert_eq!(expolem_combine(&data, 2, &c).unwrap(), rat(4, 7) * &c);
        // hypothesis 3 violation
        let bad = ExpolemData { min_antichain: Some(1), ..data };
        assert!(expolem_combine(&bad, 2, &c).is_err());
    }

    #[test]
    fn primitive_orbit_cases() {
        // standard example: both cells carry S_3 (alternating content),
        // equal sizes -> refused with the lock analysis attached
        let sp = StructuredPoset::natural(standard_example(3).unwrap());
        match primitive_orbit_bound(&sp).unwrap() {
            BoundOutcome::Refused(r) => {
                assert!(r.reason.contains("alternating"));
            }
            BoundOutcome::Certified(_) => panic!("expected refusal"),
        }
        // the four-cell fixture: all cells size 3 with S_3 restrictions,
        // refused with lock cycles reported
        let p = no_d_endos(3).unwrap();
        let frame = OrbitFrame::new(&p, no_d_endos_frame(3)).unwrap();
        let sp = StructuredPoset::new(p, frame);
        match primitive_orbit_bound(&sp).unwrap() {
            BoundOutcome::Refused(r) => {
                assert!(!r.lock_cycles.is_empty());
            }
            BoundOutcome::Certified(_) => panic!("expected refusal"),
        }
    }

    #[test]
    fn lock_cycle_restriction_inequality() {
        // a nontrivially locked pair bounds the cell restriction order
        let p = no_d_endos(3).unwrap();
        let frame = OrbitFrame::new(&p, no_d_endos_frame(3)).unwrap();
        let sp = StructuredPoset::new(p, frame);
        let cycles = lock_cycles(&sp);
        assert!(!cycles.is_empty());
        for c in &cycles {
            if c.locked_pairs.iter().any(|&(x, y)| x != y) {
                let m = c.m;
                let cap = crate::exact::factorial(m) / BigUint::from(m as u32 - 1);
                let lam = restriction_image(&sp, &[c.cycle[0]]);
                assert!(lam.order() <= cap);
            }
        }
    }

    #[test]
    fn width11_branches() {
        // disjoint sum of standard examples of distinct widths: the copies
        // cannot be interchanged, so each forms its own max-locked union
        let parts = vec![standard_example(3).unwrap(), standard_example(4).unwrap()];
        let p = Poset::disjoint_union(&parts);
        let v = width11_pipeline(&p).unwrap();
        assert_eq!(v.branch, Width11Branch::ManyMaxlocked);
        // rigid poset: small-orbits branch with |Aut| = 1
        let rigid = Poset::from_covers(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let v = width11_pipeline(&rigid).unwrap();
        assert_eq!(v.branch, Width11Branch::SmallOrbitsBound);
        assert_eq!(v.certified_lg_aut_upper, BigRational::zero());
        // width 12 refused
        let wide = antichain(12);
        assert!(matches!(width11_pipeline(&wide), Err(Error::WidthExceeded(12))));
        // soundness of the two reported bounds on a handful of posets
        for p in [chain(5), standard_example(4).unwrap(), disjoint_two_chains(3).unwrap(), transmit_drive()] {
            let v = width11_pipeline(&p).unwrap();
            let aut = aut_group(&p).order();
            assert!(le_2_pow(&aut, &v.certified_lg_aut_upper, 1));
            if let Ok(endos) = crate::counting::count_endomorphisms_capped(&p, 14) {
                // lower bound must not exceed the true count
                assert!(v.endo_lg_lower <= lg_upper(&endos, LG_SCALE));
            }
        }
    }

    #[test]
    fn natural_union_extraction() {
        let p = transmit_drive();
        let u0 = natural_union(&p, 0).unwrap();
        assert_eq!(u0.size(), 15);
        assert!(u0.tight);
        let u1 = natural_union(&p, 1).unwrap();
        assert_eq!(u1.size(), 12);
        assert!(natural_union(&p, 2).is_err());
    }
}
