//! Permutation groups by generators: exact order via a stabilizer chain,
//! orbits, block systems, primitivity, induced actions, primitive nestings,
//! and the encoded exceptional-group table.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::exact::{factorial, rat};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    img: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation { img: (0..degree).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Permutation> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n {
                return Err(Error::IndexOutOfRange(x));
            }
            if seen[x] {
                return Err(Error::ParamOutOfRange("image array is not a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { img })
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut img: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a >= degree {
                    return Err(Error::IndexOutOfRange(a));
                }
                img[a] = b;
            }
        }
        Permutation::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// self followed by other: (self.then(other))(x) = other(self(x)).
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { img: self.img.iter().map(|&x| other.img[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x] = i;
        }
        Permutation { img }
    }

    /// Restriction to an invariant point set; positions follow `points`.
    pub fn restrict(&self, points: &[usize]) -> Permutation {
        let pos: HashMap<usize, usize> =
            points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Permutation { img: points.iter().map(|&x| pos[&self.img[x]]).collect() }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.img.len()];
        let mut out = Vec::new();
        for start in 0..self.img.len() {
            if seen[start] || self.img[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.img[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.img[x];
            }
            out.push(cycle);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    cached_order: std::sync::Arc<OnceLock<BigUint>>,
}

#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub cells: Vec<Vec<usize>>,
    pub cell_size: usize,
}

#[derive(Clone, Debug)]
pub struct NestingLevel {
    /// |B_{j+1}| / |B_j|: the number of inner-block cells inside the outer block.
    pub degree: usize,
    pub action_order: BigUint,
    /// False exactly when the level action contains the alternating group on ≥ 6 cells.
    pub proper: bool,
    pub d_constant: BigRational,
}

#[derive(Clone, Debug)]
pub struct PrimitiveNesting {
    /// {start} = B_0 ⊂ B_1 ⊂ … ⊂ B_m = domain, each a block.
    pub blocks: Vec<Vec<usize>>,
    pub levels: Vec<NestingLevel>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> PermGroup {
        let gens: Vec<Permutation> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.degree(), degree, "generator degree mismatch"))
            .filter(|g| !g.is_identity())
            .collect();
        PermGroup { degree, gens, cached_order: Default::default() }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![])
    }

    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycles(degree, &[(0..degree).collect()]).unwrap());
        }
        PermGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Exact group order via a deterministic stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.cached_order.get_or_init(|| StabilizerChain::build(self).order()).clone()
    }

    /// Dual oracle: order by explicit closure enumeration, refusing above `cap`.
    pub fn order_via_enumeration(&self, cap: usize) -> Result<BigUint> {
        Ok(BigUint::from(self.elements(cap)?.len()))
    }

    /// All group elements, by breadth-first closure. Errors above `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.gens {
                let h = g.then(s);
                if !seen.contains(&h) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "group has more than {cap} elements"
                        )));
                    }
                    seen.insert(h.clone());
                    queue.push_back(h);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort_by(|a, b| a.img.cmp(&b.img));
        Ok(out)
    }

    /// Orbit partition, cells sorted by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut cell = vec![usize::MAX; self.degree];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.degree {
            if cell[start] != usize::MAX {
                continue;
            }
            let idx = out.len();
            let mut orbit = vec![start];
            cell[start] = idx;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.gens {
                    let y = g.apply(x);
                    if cell[y] == usize::MAX {
                        cell[y] = idx;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Restriction to a set that every generator maps onto itself; this is the
    /// image of the whole group under restriction, so it equals the set of
    /// restrictions of all group elements.
    pub fn restrict_to(&self, points: &[usize]) -> PermGroup {
        let pset: HashSet<usize> = points.iter().copied().collect();
        for g in &self.gens {
            for &x in points {
                assert!(pset.contains(&g.apply(x)), "point set is not invariant");
            }
        }
        PermGroup::new(points.len(), self.gens.iter().map(|g| g.restrict(points)).collect())
    }

    /// Smallest block containing all of `seed` (union-find closure).
    pub fn minimal_block_over(&self, seed: &[usize]) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        for &x in &seed[1..] {
            queue.push_back((seed[0], x));
        }
        while let Some((a, b)) = queue.pop_front() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[rb] = ra;
            for g in &self.gens {
                queue.push_back((g.apply(ra), g.apply(rb)));
            }
            // keep merging images of already-merged pairs
            queue.push_back((a, b));
        }
        let root = find(&mut parent, seed[0]);
        let block: Vec<usize> =
            (0..self.degree).filter(|&x| find(&mut parent, x) == root).collect();
        Ok(block)
    }

    pub fn minimal_block_containing(&self, pair: (usize, usize)) -> Result<Vec<usize>> {
        self.minimal_block_over(&[pair.0, pair.1])
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        for x in 1..self.degree {
            if self.minimal_block_containing((0, x))?.len() < self.degree {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_block(&self, b: &[usize]) -> bool {
        let bset: HashSet<usize> = b.iter().copied().collect();
        // check closure of the orbit of b under generators
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::from([b.to_vec()]);
        seen.insert(sorted(b));
        while let Some(cell) = queue.pop_front() {
            for g in &self.gens {
                let image = sorted(&cell.iter().map(|&x| g.apply(x)).collect::<Vec<_>>());
                let overlap = image.iter().filter(|x| bset.contains(x)).count();
                if overlap != 0 && overlap != b.len() {
                    return false;
                }
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        true
    }

    /// Orbit of a block under the generators: a partition of the domain.
    pub fn block_system(&self, b: &[usize]) -> Result<BlockSystem> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if b.is_empty() || !self.is_block(b) {
            return Err(Error::NotABlock(b.to_vec()));
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let start = sorted(b);
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        while let Some(cell) = queue.pop_front() {
            for g in &self.gens {
                let image = sorted(&cell.iter().map(|&x| g.apply(x)).collect::<Vec<_>>());
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut cells: Vec<Vec<usize>> = seen.into_iter().collect();
        cells.sort();
        let covered: usize = cells.iter().map(|c| c.len()).sum();
        if covered != self.degree {
            return Err(Error::NotABlock(b.to_vec()));
        }
        Ok(BlockSystem { cell_size: b.len(), cells })
    }

    /// Setwise stabilizer of a block, generated by Schreier generators over
    /// the block's orbit.
    pub fn block_stabilizer(&self, b: &[usize]) -> Result<PermGroup> {
        let system = self.block_system(b)?;
        let home = sorted(b);
        // transversal: for each cell, one element mapping `home` onto it
        let mut transversal: HashMap<Vec<usize>, Permutation> = HashMap::new();
        transversal.insert(home.clone(), Permutation::identity(self.degree));
        let mut queue = VecDeque::from([home.clone()]);
        while let Some(cell) = queue.pop_front() {
            let rep = transversal[&cell].clone();
            for g in &self.gens {
                let image = sorted(&cell.iter().map(|&x| g.apply(x)).collect::<Vec<_>>());
                if !transversal.contains_key(&image) {
                    transversal.insert(image.clone(), rep.then(g));
                    queue.push_back(image);
                }
            }
        }
        debug_assert_eq!(transversal.len(), system.cells.len());
        let mut gens: Vec<Permutation> = Vec::new();
        for (cell, rep) in &transversal {
            let _ = cell;
            for g in &self.gens {
                let u = rep.then(g);
                let image = sorted(&home.iter().map(|&x| u.apply(x)).collect::<Vec<_>>());
                let schreier = u.then(&transversal[&image].inverse());
                if !schreier.is_identity() {
                    gens.push(schreier);
                }
            }
        }
        gens.sort_by(|a, b| a.img.cmp(&b.img));
        gens.dedup();
        Ok(PermGroup::new(self.degree, gens))
    }

    /// G|_C: restrictions to the block of the elements stabilizing it setwise.
    pub fn induced_on_block(&self, b: &[usize]) -> Result<PermGroup> {
        let home = sorted(b);
        if home.len() == self.degree {
            return Ok(self.clone());
        }
        let stab = self.block_stabilizer(b)?;
        Ok(stab.restrict_to(&home))
    }

    /// G↾^{G·inner}_outer: the action induced on the cells of the inner block
    /// system lying inside the outer block, by elements stabilizing the outer
    /// block setwise.
    pub fn induced_block_action(&self, inner: &[usize], outer: &[usize]) -> Result<PermGroup> {
        let inner_set: HashSet<usize> = inner.iter().copied().collect();
        let outer_set: HashSet<usize> = outer.iter().copied().collect();
        if !inner_set.iter().all(|x| outer_set.contains(x)) {
            return Err(Error::BlockContainment);
        }
        let system = self.block_system(inner)?;
        let cells: Vec<Vec<usize>> = system
            .cells
            .iter()
            .filter(|c| c.iter().all(|x| outer_set.contains(x)))
            .cloned()
            .collect();
        if cells.iter().map(|c| c.len()).sum::<usize>() != outer.len() {
            return Err(Error::NotABlock(outer.to_vec()));
        }
        let cell_of: HashMap<usize, usize> = cells
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
            .collect();
        let stab_gens: Vec<Permutation> = if outer.len() == self.degree {
            self.gens.clone()
        } else {
            self.block_stabilizer(outer)?.gens
        };
        let mut action_gens = Vec::new();
        for g in &stab_gens {
            let img: Vec<usize> = cells.iter().map(|c| cell_of[&g.apply(c[0])]).collect();
            action_gens.push(Permutation::from_images(img)?);
        }
        Ok(PermGroup::new(cells.len(), action_gens))
    }

    /// Chain of blocks {start} ⊂ B_1 ⊂ … ⊂ domain, each step a smallest block
    /// strictly containing the previous one (ties broken by the
    /// lexicographically least sorted point list). Every level action is
    /// primitive by minimality; this is re-checked.
    pub fn primitive_nesting(&self, start: usize) -> Result<PrimitiveNesting> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let full: Vec<usize> = (0..self.degree).collect();
        let mut blocks = vec![vec![start]];
        let mut levels = Vec::new();
        while blocks.last().unwrap().len() < self.degree {
            let current = blocks.last().unwrap().clone();
            let mut best: Option<Vec<usize>> = None;
            for y in 0..self.degree {
                if current.contains(&y) {
                    continue;
                }
                let mut seed = current.clone();
                seed.push(y);
                let cand = self.minimal_block_over(&seed)?;
                let better = match &best {
                    None => true,
                    Some(b) => cand.len() < b.len() || (cand.len() == b.len() && cand < *b),
                };
                if better {
                    best = Some(cand);
                }
            }
            let next = best.unwrap_or(full.clone());
            let action = self.induced_block_action(&current, &next)?;
            if !action.is_primitive()? {
                return Err(Error::NotPrimitive(blocks.len()));
            }
            let degree = next.len() / current.len();
            let action_order = action.order();
            let proper = !(degree >= 6 && contains_alternating_order(&action_order, degree));
            levels.push(NestingLevel {
                degree,
                action_order,
                proper,
                d_constant: d_constant(degree),
            });
            blocks.push(next);
        }
        Ok(PrimitiveNesting { blocks, levels })
    }

    pub fn contains_alternating(&self) -> bool {
        contains_alternating_order(&self.order(), self.degree)
    }

    /// All blocks containing `x`, the trivial ones included.
    pub fn all_blocks_containing(&self, x: usize) -> Result<Vec<Vec<usize>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut known: HashSet<Vec<usize>> = HashSet::new();
        known.insert(vec![x]);
        let mut queue = VecDeque::from([vec![x]]);
        while let Some(b) = queue.pop_front() {
            if b.len() == self.degree {
                continue;
            }
            for y in 0..self.degree {
                if b.contains(&y) {
                    continue;
                }
                let mut seed = b.clone();
                seed.push(y);
                let cand = self.minimal_block_over(&seed)?;
                if known.insert(cand.clone()) {
                    queue.push_back(cand);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = known.into_iter().collect();
        out.sort_by_key(|b| (b.len(), b.clone()));
        Ok(out)
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// A subgroup of S_d of order ≥ d!/2 has index ≤ 2, hence is A_d or S_d.
pub fn contains_alternating_order(order: &BigUint, degree: usize) -> bool {
    order * BigUint::from(2u8) >= factorial(degree)
}

/// Classification of a nesting: proper iff no level of cell-degree ≥ 6 has a
/// block action containing the alternating group; such levels are the
/// factorial factors.
pub fn classify_nesting(nest: &PrimitiveNesting) -> (bool, Vec<usize>) {
    let factorial_indices: Vec<usize> = nest
        .levels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.proper)
        .map(|(i, _)| i)
        .collect();
    (factorial_indices.is_empty(), factorial_indices)
}

/// The per-level bound constant: degree ≤ 5 uses a rational upper bound on
/// lg(degree!)/degree, tabulated degrees use the largest table bound for that
/// degree, all other degrees use 1.
pub fn d_constant(degree: usize) -> BigRational {
    match degree {
        0 | 1 => rat(0, 1),
        2 => rat(1, 2),
        3 => rat(8617, 10000),
        4 => rat(11463, 10000),
        5 => rat(13814, 10000),
        d => exceptional_lookup(d)
            .iter()
            .map(|e| e.lg_over_n_bound.clone())
            .max()
            .unwrap_or_else(|| rat(1, 1)),
    }
}

// ---------------------------------------------------------------------------
// Stabilizer chain (deterministic Schreier–Sims)
// ---------------------------------------------------------------------------

struct StabilizerChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    /// transversals[i]: point → representative u with u(base[i]) = point,
    /// under the generators fixing base[..i] pointwise.
    transversals: Vec<HashMap<usize, Permutation>>,
}

impl StabilizerChain {
    fn build(g: &PermGroup) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree: g.degree,
            base: Vec::new(),
            strong: Vec::new(),
            transversals: Vec::new(),
        };
        for gen in &g.gens {
            chain.add_strong(gen.clone());
        }
        chain.recompute();
        loop {
            match chain.find_dropout() {
                Some(residue) => {
                    chain.add_strong(residue);
                    chain.recompute();
                }
                None => break,
            }
        }
        chain
    }

    fn add_strong(&mut self, g: Permutation) {
        if g.is_identity() {
            return;
        }
        if !self.base.iter().any(|&b| g.apply(b) != b) {
            let moved = (0..self.degree).find(|&x| g.apply(x) != x).unwrap();
            self.base.push(moved);
        }
        self.strong.push(g);
    }

    fn level_gens(&self, level: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| self.base[..level].iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    fn recompute(&mut self) {
        self.transversals.clear();
        for i in 0..self.base.len() {
            let gens = self.level_gens(i);
            let mut tv: HashMap<usize, Permutation> = HashMap::new();
            tv.insert(self.base[i], Permutation::identity(self.degree));
            let mut queue = VecDeque::from([self.base[i]]);
            while let Some(p) = queue.pop_front() {
                let rep = tv[&p].clone();
                for g in &gens {
                    let q = g.apply(p);
                    if !tv.contains_key(&q) {
                        tv.insert(q, rep.then(g));
                        queue.push_back(q);
                    }
                }
            }
            self.transversals.push(tv);
        }
    }

    /// Sift: returns None when the element factors through the chain.
    fn sift(&self, g: &Permutation) -> Option<Permutation> {
        let mut h = g.clone();
        for i in 0..self.base.len() {
            if h.is_identity() {
                return None;
            }
            let p = h.apply(self.base[i]);
            match self.transversals[i].get(&p) {
                Some(rep) => h = h.then(&rep.inverse()),
                None => return Some(h),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some(h)
        }
    }

    /// First Schreier generator with a nontrivial sift residue, if any.
    fn find_dropout(&self) -> Option<Permutation> {
        for i in 0..self.base.len() {
            let gens = self.level_gens(i);
            for rep in self.transversals[i].values() {
                for g in &gens {
                    let u = rep.then(g);
                    let p = u.apply(self.base[i]);
                    let schreier = u.then(&self.transversals[i][&p].inverse());
                    if let Some(residue) = self.sift(&schreier) {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    fn order(&self) -> BigUint {
        self.transversals
            .iter()
            .fold(BigUint::one(), |acc, tv| acc * BigUint::from(tv.len()))
    }
}

// ---------------------------------------------------------------------------
// Exceptional-group table
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ExceptionalEntry {
    pub degree: usize,
    pub name: String,
    pub order: BigUint,
    pub lg_over_n_bound: BigRational,
    pub transitivity_note: String,
}

#[derive(serde::Deserialize)]
struct RawTable {
    version: u32,
    checksum: String,
    entries: Vec<RawEntry>,
}

#[derive(serde::Deserialize)]
struct RawEntry {
    degree: usize,
    name: String,
    order: u64,
    bound_num: i64,
    bound_den: i64,
    transitivity_note: String,
}

fn fnv1a64(data: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in data.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn canonical_rows(entries: &[RawEntry]) -> String {
    entries
        .iter()
        .map(|e| {
            format!(
                "{}|{}|{}|{}|{}|{}\n",
                e.degree, e.name, e.order, e.bound_num, e.bound_den, e.transitivity_note
            )
        })
        .collect()
}

pub fn exceptional_table() -> &'static [ExceptionalEntry] {
    static TABLE: OnceLock<Vec<ExceptionalEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let raw: RawTable =
            serde_json::from_str(include_str!("../data/exceptional_groups.json"))
                .expect("exceptional-group data file is valid JSON");
        assert_eq!(raw.version, 1);
        let expected = format!("fnv1a64:{:016x}", fnv1a64(&canonical_rows(&raw.entries)));
        assert_eq!(raw.checksum, expected, "exceptional-group table checksum mismatch");
        assert_eq!(raw.entries.len(), 24);
        raw.entries
            .into_iter()
            .map(|e| ExceptionalEntry {
                degree: e.degree,
                name: e.name,
                order: BigUint::from(e.order),
                lg_over_n_bound: rat(e.bound_num, e.bound_den),
                transitivity_note: e.transitivity_note,
            })
            .collect()
    })
}

pub fn exceptional_lookup(degree: usize) -> Vec<ExceptionalEntry> {
    exceptional_table().iter().filter(|e| e.degree == degree).cloned().collect()
}

// ---------------------------------------------------------------------------
// Generator fixtures
// ---------------------------------------------------------------------------

/// Named generator sets used by tests and the acceptance suite.
pub mod fixtures {
    use super::*;

    pub fn cyclic(n: usize) -> PermGroup {
        PermGroup::new(n, vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()])
    }

    pub fn dihedral(n: usize) -> PermGroup {
        let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        PermGroup::new(n, vec![rot, refl])
    }

    pub fn symmetric(n: usize) -> PermGroup {
        PermGroup::symmetric(n)
    }

    pub fn alternating(n: usize) -> PermGroup {
        assert!(n >= 3);
        let three = Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
        let long = if n % 2 == 1 {
            Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()
        } else {
            Permutation::from_cycles(n, &[(1..n).collect()]).unwrap()
        };
        PermGroup::new(n, vec![three, long])
    }

    /// Affine maps x ↦ ax + b over F_5, acting on {0..4}.
    pub fn agl_1_5() -> PermGroup {
        let shift = Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let scale = Permutation::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        PermGroup::new(5, vec![shift, scale])
    }

    /// Fractional linear maps over F_5 on the projective line {0,1,2,3,4,∞},
    /// with ∞ encoded as point 5.
    pub fn pgl_2_5() -> PermGroup {
        let shift = Permutation::from_images(vec![1, 2, 3, 4, 0, 5]).unwrap();
        let scale = Permutation::from_images(vec![0, 2, 4, 1, 3, 5]).unwrap();
        let invert = Permutation::from_images(vec![5, 1, 3, 2, 4, 0]).unwrap();
        PermGroup::new(6, vec![shift, scale, invert])
    }

    /// GL(3,2) acting on the 7 nonzero vectors of F_2^3; point i encodes the
    /// vector with bits of i+1.
    pub fn psl_3_2() -> PermGroup {
        fn mat_perm(m: [[u8; 3]; 3]) -> Permutation {
            let img: Vec<usize> = (1u8..8)
                .map(|v| {
                    let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
                    let mut w = 0u8;
                    for (row, mrow) in m.iter().enumerate() {
                        let bit = (0..3).fold(0u8, |acc, c| acc ^ (mrow[c] & bits[c]));
                        w |= bit << row;
                    }
                    (w - 1) as usize
                })
                .collect();
            Permutation::from_images(img).unwrap()
        }
        let rotate = mat_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let transvect = mat_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        PermGroup::new(7, vec![rotate, transvect])
    }

    /// Affine maps over F_7 (order 42, primitive, degree 7).
    pub fn agl_1_7() -> PermGroup {
        let shift = Permutation::from_images((0..7).map(|x| (x + 1) % 7).collect()).unwrap();
        let scale = Permutation::from_images((0..7).map(|x| x * 3 % 7).collect()).unwrap();
        PermGroup::new(7, vec![shift, scale])
    }

    /// Fractional linear maps over F_7 on {0..6, ∞ = 7}.
    pub fn pgl_2_7() -> PermGroup {
        let shift =
            Permutation::from_images(vec![1, 2, 3, 4, 5, 6, 0, 7]).unwrap();
        let scale = Permutation::from_images(vec![0, 3, 6, 2, 5, 1, 4, 7]).unwrap();
        let invert = Permutation::from_images(vec![7, 1, 4, 5, 2, 3, 6, 0]).unwrap();
        PermGroup::new(8, vec![shift, scale, invert])
    }

    /// Klein four-group acting regularly on 4 points.
    pub fn klein_four() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
        )
    }

    /// Elementary abelian 2^3 acting regularly on 8 points.
    pub fn elementary_8() -> PermGroup {
        let gen = |mask: usize| {
            Permutation::from_images((0..8).map(|x| x ^ mask).collect()).unwrap()
        };
        PermGroup::new(8, vec![gen(1), gen(2), gen(4)])
    }

    /// S_2 wr S_4 on 8 points with blocks {0,1},{2,3},{4,5},{6,7}.
    pub fn s2_wr_s4() -> PermGroup {
        PermGroup::new(
            8,
            vec![
                Permutation::from_cycles(8, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(8, &[vec![0, 2], vec![1, 3]]).unwrap(),
                Permutation::from_cycles(8, &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]]).unwrap(),
            ],
        )
    }

    /// S_4 wr S_2 on 8 points with blocks {0..3},{4..7}.
    pub fn s4_wr_s2() -> PermGroup {
        PermGroup::new(
            8,
            vec![
                Permutation::from_cycles(8, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(8, &[vec![0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(8, &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]])
                    .unwrap(),
            ],
        )
    }

    /// The row/column group: S_n acting on pairs (i, {j,k}) by
    /// σ(i, {j,k}) = (σi, {σj, σk}). Point encoding: i·C(n,2) + pair index in
    /// lexicographic order. Rows {(i, ·)} are blocks.
    /// S_n x S_n acting on an n x n grid (point i*n + j). Rows and columns
    /// are both block systems, so the minimal block is not unique.
    pub fn row_column_group(n: usize) -> PermGroup {
        let sn = PermGroup::symmetric(n);
        let mut gens: Vec<Permutation> = Vec::new();
        for sigma in sn.generators() {
            let on_rows: Vec<usize> =
                (0..n * n).map(|pt| sigma.apply(pt / n) * n + pt % n).collect();
            let on_cols: Vec<usize> =
                (0..n * n).map(|pt| (pt / n) * n + sigma.apply(pt % n)).collect();
            gens.push(Permutation::from_images(on_rows).unwrap());
            gens.push(Permutation::from_images(on_cols).unwrap());
        }
        PermGroup::new(n * n, gens)
    }

    /// Row i of the grid underlying `row_column_group(n)`.
    pub fn row_column_row(n: usize, i: usize) -> Vec<usize> {
        (i * n..(i + 1) * n).collect()
    }

    /// All transitive fixtures of degree ≤ 8, with names.
    pub fn transitive_degree_at_most_8() -> Vec<(String, PermGroup)> {
        let mut out: Vec<(String, PermGroup)> = Vec::new();
        for n in 2..=8 {
            out.push((format!("C_{n}"), cyclic(n)));
            out.push((format!("S_{n}"), symmetric(n)));
            if n >= 3 {
                out.push((format!("D_{n}"), dihedral(n)));
            }
            if n >= 4 {
                out.push((format!("A_{n}"), alternating(n)));
            }
        }
        out.push(("V_4".into(), klein_four()));
        out.push(("E_8".into(), elementary_8()));
        out.push(("S2wrS4".into(), s2_wr_s4()));
        out.push(("S4wrS2".into(), s4_wr_s2()));
        out.push(("AGL(1,5)".into(), agl_1_5()));
        out.push(("PGL(2,5)".into(), pgl_2_5()));
        out.push(("PSL(3,2)".into(), psl_3_2()));
        out.push(("AGL(1,7)".into(), agl_1_7()));
        out.push(("PGL(2,7)".into(), pgl_2_7()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn orders_of_small_groups() {
        let s5 = PermGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
            ],
        );
        assert_eq!(s5.order(), big(120));
        assert_eq!(cyclic(4).order(), big(4));
        assert_eq!(PermGroup::trivial(3).order(), big(1));
    }

    #[test]
    fn fixture_orders() {
        assert_eq!(agl_1_5().order(), big(20));
        assert_eq!(pgl_2_5().order(), big(120));
        assert_eq!(psl_3_2().order(), big(168));
        assert_eq!(agl_1_7().order(), big(42));
        assert_eq!(pgl_2_7().order(), big(336));
        assert_eq!(alternating(6).order(), big(360));
        assert_eq!(s2_wr_s4().order(), big(384));
        assert_eq!(s4_wr_s2().order(), big(1152));
        assert_eq!(row_column_group(3).order(), big(36));
    }

    #[test]
    fn order_matches_enumeration() {
        for (name, g) in transitive_degree_at_most_8() {
            if g.order() <= big(10000) {
                assert_eq!(g.order(), g.order_via_enumeration(20000).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn orbit_basics() {
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
        assert!(cyclic(4).is_transitive());
        let swap = PermGroup::new(3, vec![Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()]);
        assert_eq!(swap.orbits(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn minimal_blocks() {
        let c4 = cyclic(4);
        assert_eq!(c4.minimal_block_containing((0, 2)).unwrap(), vec![0, 2]);
        assert_eq!(symmetric(4).minimal_block_containing((0, 2)).unwrap(), vec![0, 1, 2, 3]);
        // rows of the 2x2 grid under the wreath-type group
        let grid = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
        );
        assert_eq!(grid.minimal_block_containing((0, 1)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn primitivity() {
        assert!(symmetric(3).is_primitive().unwrap());
        assert!(!cyclic(4).is_primitive().unwrap());
        assert!(agl_1_5().is_primitive().unwrap());
        assert!(pgl_2_5().is_primitive().unwrap());
        assert!(psl_3_2().is_primitive().unwrap());
        assert!(matches!(
            PermGroup::trivial(3).is_primitive(),
            Err(Error::NotTransitive)
        ));
    }

    #[test]
    fn block_systems() {
        let c4 = cyclic(4);
        let sys = c4.block_system(&[0, 2]).unwrap();
        assert_eq!(sys.cells, vec![vec![0, 2], vec![1, 3]]);
        let singles = c4.block_system(&[1]).unwrap();
        assert_eq!(singles.cells.len(), 4);
        let full = c4.block_system(&[0, 1, 2, 3]).unwrap();
        assert_eq!(full.cells.len(), 1);
        assert!(c4.block_system(&[0, 1]).is_err());
    }

    #[test]
    fn induced_actions() {
        let s4 = symmetric(4);
        assert_eq!(s4.induced_on_block(&[0, 1, 2, 3]).unwrap().order(), big(24));
        let c4 = cyclic(4);
        let act = c4.induced_block_action(&[0, 2], &[0, 1, 2, 3]).unwrap();
        assert_eq!(act.degree(), 2);
        assert_eq!(act.order(), big(2));
        // induced_on_block on a proper block of the wreath product
        let w = s2_wr_s4();
        let on_block = w.induced_on_block(&[0, 1]).unwrap();
        assert_eq!(on_block.order(), big(2));
    }

    #[test]
    fn row_column_induced_action_on_rows() {
        let g = row_column_group(3);
        assert_eq!(g.degree(), 9);
        let row0 = row_column_row(3, 0);
        assert!(g.is_block(&row0));
        let act = g.induced_block_action(&row0, &(0..9).collect::<Vec<_>>()).unwrap();
        assert_eq!(act.degree(), 3);
        assert_eq!(act.order(), big(6));
    }

    #[test]
    fn nesting_of_primitive_group_is_single_step() {
        let nest = agl_1_5().primitive_nesting(0).unwrap();
        assert_eq!(nest.blocks.len(), 2);
        assert_eq!(nest.levels[0].degree, 5);
        assert!(classify_nesting(&nest).0);
    }

    #[test]
    fn nesting_of_c4() {
        let nest = cyclic(4).primitive_nesting(0).unwrap();
        assert_eq!(nest.blocks, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(nest.levels.iter().map(|l| l.degree).collect::<Vec<_>>(), vec![2, 2]);
        assert!(classify_nesting(&nest).0);
    }

    #[test]
    fn nesting_of_row_column_group() {
        let nest = row_column_group(3).primitive_nesting(0).unwrap();
        assert_eq!(nest.levels.iter().map(|l| l.degree).collect::<Vec<_>>(), vec![3, 3]);
    }

    #[test]
    fn alternating_detection() {
        assert!(symmetric(7).contains_alternating());
        assert!(alternating(7).contains_alternating());
        assert!(!agl_1_5().contains_alternating());
        let s7_nest = symmetric(7).primitive_nesting(0).unwrap();
        let (proper, factorial) = classify_nesting(&s7_nest);
        assert!(!proper);
        assert_eq!(factorial, vec![0]);
    }

    #[test]
    fn table_is_loadable_and_consistent() {
        let table = exceptional_table();
        assert_eq!(table.len(), 24);
        assert_eq!(exceptional_lookup(5).len(), 1);
        assert_eq!(exceptional_lookup(12).len(), 2);
        assert!(exceptional_lookup(14).is_empty());
        for entry in table {
            // lg(order) ≤ bound·degree, decided exactly
            assert!(
                crate::exact::le_2_pow(&entry.order, &entry.lg_over_n_bound, entry.degree),
                "{} violates its bound",
                entry.name
            );
        }
    }

    #[test]
    fn d_constants() {
        assert_eq!(d_constant(2), rat(1, 2));
        assert_eq!(d_constant(5), rat(13814, 10000));
        assert_eq!(d_constant(6), rat(11512, 10000));
        assert_eq!(d_constant(12), rat(13781, 10000));
        assert_eq!(d_constant(14), rat(1, 1));
        assert_eq!(d_constant(25), rat(1, 1));
        for d in 2..=30 {
            assert!(d_constant(d) <= rat(13814, 10000));
        }
    }

    #[test]
    fn all_blocks_of_c8() {
        let blocks = fixtures::cyclic(8).all_blocks_containing(0).unwrap();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 8]);
    }

    #[test]
    fn permutation_algebra() {
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![2, 3]]).unwrap();
        assert_eq!(a.then(&b).apply(1), 3);
        assert!(a.then(&a.inverse()).is_identity());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }
}
