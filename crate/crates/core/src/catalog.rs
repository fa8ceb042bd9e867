//! Deterministic generators for the named ordered sets used throughout the
//! library and tests, plus seeded random posets and exhaustive enumeration of
//! small isomorphism classes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::are_isomorphic;
use crate::poset_core::{lexicographic_sum, Poset};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Antichain { n: usize },
    Chain { n: usize },
    /// The standard example S_w: singletons and (w−1)-subsets of a w-set by inclusion.
    StandardExample { w: usize },
    /// w disjoint 2-chains.
    DisjointTwoChains { w: usize },
    /// 2n elements x_i < y_j iff i ≠ j.
    Crown { n: usize },
    /// Crown with every element replaced by an order-autonomous k-antichain.
    CrownBlownUp { n: usize, k: usize },
    /// The 4-frame fixture in which every frame endomorphism is an automorphism.
    NoDEndos { m: usize },
    /// The 27-element two-union fixture with nine 3-element orbits.
    TransmitDrive,
    Random { n: usize, seed: u64, levels: usize, density_percent: u32 },
}

pub fn antichain(n: usize) -> Poset {
    Poset::from_covers(n, &[]).unwrap()
}

pub fn chain(n: usize) -> Poset {
    Poset::from_covers(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
}

/// S_w: minimal elements 0..w−1 (the singletons), maximal elements w..2w−1
/// (the (w−1)-subsets); minimal i lies below maximal w+j iff i ≠ j.
pub fn standard_example(w: usize) -> Result<Poset> {
    if w < 3 {
        return Err(Error::ParamOutOfRange(format!("standard example needs w >= 3, got {w}")));
    }
    let mut pairs = Vec::new();
    for i in 0..w {
        for j in 0..w {
            if i != j {
                pairs.push((i, w + j));
            }
        }
    }
    Poset::from_covers(2 * w, &pairs)
}

/// w disjoint 2-chains: i < w+i.
pub fn disjoint_two_chains(w: usize) -> Result<Poset> {
    if w < 1 {
        return Err(Error::ParamOutOfRange("need w >= 1".into()));
    }
    Poset::from_covers(2 * w, &(0..w).map(|i| (i, w + i)).collect::<Vec<_>>())
}

/// Crown on 2n elements: minimal i below maximal n+j iff i ≠ j.
pub fn crown(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(Error::ParamOutOfRange("crown needs n >= 2".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((i, n + j));
            }
        }
    }
    Poset::from_covers(2 * n, &pairs)
}

pub fn crown_blown_up(n: usize, k: usize) -> Result<Poset> {
    if k < 1 {
        return Err(Error::ParamOutOfRange("blow-up factor must be >= 1".into()));
    }
    let index = crown(n)?;
    let pieces: Vec<Poset> = (0..2 * n).map(|_| antichain(k)).collect();
    lexicographic_sum(&index, &pieces)
}

/// Four frames of size m on elements [0..m), [m..2m), [2m..3m), [3m..4m)
/// (frames 1..4 in that order), with exactly these comparabilities:
/// x_j^1 < x_k^2 iff j ≠ k; x_j^3 < x_j^2; x_j^3 < x_j^4; x_j^1 < x_j^4.
pub fn no_d_endos(m: usize) -> Result<Poset> {
    if m < 3 {
        return Err(Error::ParamOutOfRange(format!("fixture needs m >= 3, got {m}")));
    }
    let d = |frame: usize, j: usize| (frame - 1) * m + j;
    let mut pairs = Vec::new();
    for j in 0..m {
        for k in 0..m {
            if j != k {
                pairs.push((d(1, j), d(2, k)));
            }
        }
        pairs.push((d(3, j), d(2, j)));
        pairs.push((d(3, j), d(4, j)));
        pairs.push((d(1, j), d(4, j)));
    }
    Poset::from_covers(4 * m, &pairs)
}

pub fn no_d_endos_frame(m: usize) -> Vec<Vec<usize>> {
    (0..4).map(|f| (f * m..(f + 1) * m).collect()).collect()
}

/// The 27-element fixture with nine 3-element orbits M, A, Ã, B, B̃, C, C̃,
/// D, D̃ and the two interdependent orbit unions {A,B,M,B̃,Ã} and
/// {C,D,D̃,C̃}.
pub fn transmit_drive() -> Poset {
    // index layout: M 0-2, A 3-5, At 6-8, B 9-11, Bt 12-14,
    //               C 15-17, Ct 18-20, D 21-23, Dt 24-26
    let m = |j: usize| j;
    let a = |j: usize| 3 + j;
    let at = |j: usize| 6 + j;
    let b = |j: usize| 9 + j;
    let bt = |j: usize| 12 + j;
    let c = |j: usize| 15 + j;
    let ct = |j: usize| 18 + j;
    let d = |j: usize| 21 + j;
    let dt = |j: usize| 24 + j;
    let mut pairs = Vec::new();
    for j in 0..3 {
        let next = (j + 1) % 3;
        let prev = (j + 2) % 3;
        pairs.push((a(j), b(j)));
        pairs.push((a(j), b(next)));
        pairs.push((at(j), bt(j)));
        pairs.push((at(j), bt(prev)));
        pairs.push((m(j), b(j)));
        pairs.push((m(j), bt(j)));
        pairs.push((m(j), bt(next)));
        for k in 0..3 {
            pairs.push((b(j), c(k)));
            pairs.push((bt(j), ct(k)));
        }
        pairs.push((c(j), d(j)));
        pairs.push((c(j), d(next)));
        pairs.push((c(j), dt(j)));
        pairs.push((ct(j), dt(j)));
        pairs.push((ct(j), dt(prev)));
        pairs.push((ct(j), d(j)));
    }
    let labels: Vec<String> = ["M", "A", "A~", "B", "B~", "C", "C~", "D", "D~"]
        .iter()
        .flat_map(|name| (1..=3).map(move |j| format!("{name}{j}")))
        .collect();
    Poset::from_covers(27, &pairs).unwrap().with_labels(labels)
}

pub fn transmit_drive_frame() -> Vec<Vec<usize>> {
    (0..9).map(|f| (3 * f..3 * f + 3).collect()).collect()
}

/// Seeded layered random order: each element gets a uniform level; each
/// upward cross-level pair becomes a cover with the given probability, then
/// the transitive closure is applied.
pub fn random_poset(n: usize, seed: u64, levels: usize, density_percent: u32) -> Result<Poset> {
    if levels == 0 || density_percent > 100 {
        return Err(Error::ParamOutOfRange("levels >= 1, density in 0..=100".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let level: Vec<usize> = (0..n).map(|_| rng.gen_range(0..levels)).collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if level[x] < level[y] && rng.gen_range(0..100) < density_percent {
                pairs.push((x, y));
            }
        }
    }
    Poset::from_covers(n, &pairs)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Poset> {
    match *spec {
        GeneratorSpec::Antichain { n } => Ok(antichain(n)),
        GeneratorSpec::Chain { n } => Ok(chain(n)),
        GeneratorSpec::StandardExample { w } => standard_example(w),
        GeneratorSpec::DisjointTwoChains { w } => disjoint_two_chains(w),
        GeneratorSpec::Crown { n } => crown(n),
        GeneratorSpec::CrownBlownUp { n, k } => crown_blown_up(n, k),
        GeneratorSpec::NoDEndos { m } => no_d_endos(m),
        GeneratorSpec::TransmitDrive => Ok(transmit_drive()),
        GeneratorSpec::Random { n, seed, levels, density_percent } => {
            random_poset(n, seed, levels, density_percent)
        }
    }
}

/// One representative per isomorphism class of posets on n ≤ 6 elements, by
/// incremental maximal-element extension with isomorphism rejection.
pub fn enumerate_small_posets(n: usize) -> Result<Vec<Poset>> {
    if n > 6 {
        return Err(Error::ParamOutOfRange(format!("enumeration capped at 6 elements, got {n}")));
    }
    if n == 0 {
        return Ok(vec![Poset::from_covers(0, &[]).unwrap()]);
    }
    let mut classes = vec![Poset::from_covers(1, &[]).unwrap()];
    for k in 2..=n {
        let mut next: Vec<Poset> = Vec::new();
        for base in &classes {
            // every down-closed subset can be the strict down-set of a new
            // maximal element
            for ideal in 0u32..(1 << (k - 1)) {
                let members: Vec<usize> =
                    (0..k - 1).filter(|i| ideal >> i & 1 == 1).collect();
                let closed = members
                    .iter()
                    .all(|&x| (0..k - 1).all(|y| !base.lt(y, x) || ideal >> y & 1 == 1));
                if !closed {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for x in 0..k - 1 {
                    for y in 0..k - 1 {
                        if base.lt(x, y) {
                            pairs.push((x, y));
                        }
                    }
                }
                for &x in &members {
                    pairs.push((x, k - 1));
                }
                let candidate = Poset::from_covers(k, &pairs).unwrap();
                if !next.iter().any(|q| are_isomorphic(&candidate, q)) {
                    next.push(candidate);
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::aut_group;
    use num_bigint::BigUint;

    #[test]
    fn standard_example_shape() {
        let s5 = standard_example(5).unwrap();
        assert_eq!(s5.size(), 10);
        assert_eq!(s5.height(), 1);
        assert_eq!(s5.width(), 5);
        // every maximal element sits above exactly 4 minimal elements
        for j in 5..10 {
            assert_eq!(s5.down_mask(j).count_ones(), 4);
        }
        assert!(standard_example(2).is_err());
    }

    #[test]
    fn two_chains_shape() {
        let p = disjoint_two_chains(5).unwrap();
        assert_eq!(p.size(), 10);
        assert_eq!(p.height(), 1);
        assert_eq!(p.width(), 5);
    }

    #[test]
    fn self_dual_families() {
        let s4 = standard_example(4).unwrap();
        assert!(are_isomorphic(&s4, &s4.dual()));
        let c4 = disjoint_two_chains(4).unwrap();
        assert!(are_isomorphic(&c4, &c4.dual()));
    }

    #[test]
    fn no_d_endos_comparabilities() {
        let m = 3;
        let p = no_d_endos(m).unwrap();
        assert_eq!(p.size(), 12);
        let d = |frame: usize, j: usize| (frame - 1) * m + j;
        for j in 0..m {
            for k in 0..m {
                assert_eq!(p.lt(d(1, j), d(2, k)), j != k);
                assert_eq!(p.lt(d(3, j), d(2, k)), j == k);
                assert_eq!(p.lt(d(3, j), d(4, k)), j == k);
                assert_eq!(p.lt(d(1, j), d(4, k)), j == k);
                // no other comparabilities
                assert!(!p.comparable(d(1, j), d(3, k)));
                assert!(!p.comparable(d(2, j), d(4, k)));
            }
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_poset(10, 1, 3, 40).unwrap();
        let b = random_poset(10, 1, 3, 40).unwrap();
        assert_eq!(a, b);
        let c = random_poset(10, 2, 3, 40).unwrap();
        assert!(a != c || a.covers() == c.covers());
    }

    #[test]
    fn small_poset_counts() {
        let counts: Vec<usize> =
            (1..=5).map(|n| enumerate_small_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
        assert!(enumerate_small_posets(7).is_err());
    }

    #[test]
    fn aut_orders_of_families() {
        assert_eq!(aut_group(&standard_example(4).unwrap()).order(), BigUint::from(24u32));
        assert_eq!(aut_group(&disjoint_two_chains(4).unwrap()).order(), BigUint::from(24u32));
        // an automorphism of the crown is determined by its action on the
        // minimal layer (the complement matching forces the top layer)
        assert_eq!(aut_group(&crown(3).unwrap()).order(), BigUint::from(6u32));
        assert_eq!(
            aut_group(&crown(3).unwrap()).order(),
            crate::counting::aut_order_bruteforce(&crown(3).unwrap())
        );
    }

    #[test]
    fn transmit_drive_shape() {
        let p = transmit_drive();
        assert_eq!(p.size(), 27);
        assert_eq!(p.height(), 3);
        let orbits = aut_group(&p).orbits();
        assert_eq!(orbits.len(), 9);
        assert_eq!(orbits, transmit_drive_frame());
    }

    #[test]
    fn blown_up_crown() {
        let p = crown_blown_up(3, 2).unwrap();
        assert_eq!(p.size(), 12);
        // each 2-antichain block is order-autonomous
        for b in 0..6 {
            assert!(p.is_order_autonomous(&[2 * b, 2 * b + 1]).unwrap().verdict);
        }
    }
}
