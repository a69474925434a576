//! Permutations of `{1..n}` and finite permutation groups held as explicit
//! element lists.
//!
//! Composition reads right to left: `p.compose(&q)` is the map `i ↦ p(q(i))`.
//! Points are 1-based in every public signature; internally images are
//! stored 0-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactnum::{factor_u64, is_prime_u64};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 255;

/// Default bound on the number of elements `generate` will enumerate.
pub const DEFAULT_CLOSURE_CAP: usize = 20160;
/// Default bound on `|G|` for full subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 200;

// Groups at most this large get a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_DEGREE, "degree {n} too large");
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list `[σ(1), …, σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::invalid(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Ok(Perm { images: out })
    }

    /// Builds a permutation of degree `n` from disjoint or overlapping cycles.
    /// Overlapping cycles are multiplied right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut p = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let mut imgs: Vec<usize> = (1..=n).collect();
            let mut seen = HashSet::new();
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::invalid(format!("point {a} outside 1..{n}")));
                }
                if !seen.insert(a) {
                    return Err(Error::invalid(format!("point {a} repeated in a cycle")));
                }
                imgs[a - 1] = cycle[(k + 1) % cycle.len()];
            }
            p = Perm::from_images(&imgs)?.compose(&p)?;
        }
        Ok(p)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`. With
    /// `degree = None` the degree is the largest point mentioned.
    pub fn parse(src: &str, degree: Option<usize>) -> Result<Perm> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut num = String::new();
        let flush = |num: &mut String, cur: &mut Option<Vec<usize>>, pos: usize| -> Result<()> {
            if num.is_empty() {
                return Ok(());
            }
            let v: usize = num.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("bad point {num}"),
            })?;
            match cur {
                Some(c) => c.push(v),
                None => {
                    return Err(Error::Parse {
                        pos,
                        msg: "point outside parentheses".into(),
                    })
                }
            }
            num.clear();
            Ok(())
        };
        for (pos, ch) in src.char_indices() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::Parse { pos, msg: "nested '('".into() });
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut num, &mut current, pos)?;
                    match current.take() {
                        Some(c) => {
                            if !c.is_empty() {
                                cycles.push(c)
                            }
                        }
                        None => return Err(Error::Parse { pos, msg: "unmatched ')'".into() }),
                    }
                }
                c if c.is_ascii_digit() => num.push(c),
                c if c.is_whitespace() || c == ',' => flush(&mut num, &mut current, pos)?,
                other => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if current.is_some() {
            return Err(Error::Parse {
                pos: src.len(),
                msg: "missing ')'".into(),
            });
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = degree.unwrap_or(max);
        if max > n {
            return Err(Error::invalid(format!("point {max} exceeds degree {n}")));
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    pub fn cycles(&self) -> CycleList {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j + 1);
                j = self.images[j] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        CycleList(out)
    }

    /// Sorted cycle lengths, fixed points included as 1s.
    pub fn cycle_type(&self) -> Vec<usize> {
        let cl = self.cycles();
        let moved: usize = cl.0.iter().map(Vec::len).sum();
        let mut t: Vec<usize> = cl.0.iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable();
        t
    }

    pub fn sign(&self) -> i8 {
        let odd = self.cycles().0.iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Least `k >= 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .0
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycles().fmt(f)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `p ∘ q`.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.compose(q)
}

/// Disjoint cycles, each starting at its least point, sorted by that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleList(pub Vec<Vec<usize>>);

impl CycleList {
    pub fn to_perm(&self, degree: usize) -> Result<Perm> {
        Perm::from_cycles(degree, &self.0)
    }
}

impl fmt::Display for CycleList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for c in &self.0 {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Subset of a [`FiniteGroup`], as sorted element positions. Only meaningful
/// together with the group it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_positions(mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }
}

/// A permutation group given by its full element list. The identity sits
/// at position 0.
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    table: OnceLock<Vec<u32>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            degree: self.degree,
            elements: self.elements.clone(),
            index: self.index.clone(),
            inverses: self.inverses.clone(),
            generators: self.generators.clone(),
            table: OnceLock::new(),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Closure of `gens` under composition, by breadth-first products.
pub fn generate(gens: &[Perm], cap: usize) -> Result<FiniteGroup> {
    let first = gens
        .first()
        .ok_or_else(|| Error::invalid("generate needs at least one generator"))?;
    let n = first.degree();
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    let id = Perm::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let prod = g.compose_unchecked(&elements[i]);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::cap(
                        "group closure",
                        cap,
                        format!("{} elements enumerated", elements.len()),
                    ));
                }
                index.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteGroup::assemble(n, elements, index, generators))
}

impl FiniteGroup {
    fn assemble(
        degree: usize,
        elements: Vec<Perm>,
        index: HashMap<Perm, usize>,
        mut generators: Vec<usize>,
    ) -> FiniteGroup {
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        generators.sort_unstable();
        generators.dedup();
        FiniteGroup {
            degree,
            elements,
            index,
            inverses,
            generators,
            table: OnceLock::new(),
        }
    }

    /// Group from an element list already known to be closed.
    pub fn from_elements(degree: usize, elems: Vec<Perm>) -> Result<FiniteGroup> {
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        for e in elems {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch(degree, e.degree()));
            }
            if !index.contains_key(&e) {
                index.insert(e.clone(), elements.len());
                elements.push(e);
            }
        }
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&a.compose_unchecked(b)) {
                    return Err(Error::invalid("element list is not closed"));
                }
            }
        }
        let gens = (1..elements.len()).collect();
        let mut g = FiniteGroup::assemble(degree, elements, index, gens);
        let minimal = g.small_generating_set(&g.whole());
        g.generators = minimal;
        Ok(g)
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        if n <= 1 {
            return generate(&[Perm::identity(n.max(1))], 1).expect("trivial group");
        }
        let cycle: Vec<usize> = (2..=n).chain([1]).collect();
        let gens = [
            Perm::from_images(&cycle).unwrap(),
            Perm::from_cycles(n, &[vec![1, 2]]).unwrap(),
        ];
        generate(&gens, usize::MAX).unwrap()
    }

    pub fn alternating(n: usize) -> FiniteGroup {
        let s = FiniteGroup::symmetric(n);
        let even = s.elements.into_iter().filter(|p| p.sign() == 1).collect();
        FiniteGroup::from_elements(n.max(1), even).unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let cycle: Vec<usize> = (2..=n).chain([1]).collect();
        generate(&[Perm::from_images(&cycle).unwrap()], usize::MAX).unwrap()
    }

    /// Symmetries of the regular `n`-gon acting on its vertices.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let rot: Vec<usize> = (2..=n).chain([1]).collect();
        let refl: Vec<usize> = (1..=n).rev().collect();
        generate(
            &[Perm::from_images(&rot).unwrap(), Perm::from_images(&refl).unwrap()],
            usize::MAX,
        )
        .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> Vec<&Perm> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    fn table(&self) -> Option<&[u32]> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in self.elements.iter().enumerate() {
                for (j, b) in self.elements.iter().enumerate() {
                    t[i * n + j] = self.index[&a.compose_unchecked(b)] as u32;
                }
            }
            t
        }))
    }

    /// Position of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose_unchecked(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elements[a].order()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.element_order(a) == n)
    }

    /// Subgroup generated by the given positions.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_positions(members)
    }

    /// Checks that a position set is a subgroup of this group.
    pub fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if !h.contains(0) || h.members.iter().any(|&i| i >= self.order()) {
            return Err(Error::NotASubgroup);
        }
        for &a in &h.members {
            for &b in &h.members {
                if !h.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(())
    }

    /// A subgroup of `self` as a standalone group.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let elements: Vec<Perm> = h.members.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements.iter().cloned().zip(0..).collect();
        let gens = self.small_generating_set(h);
        let gens = gens
            .iter()
            .map(|g| h.members.binary_search(g).unwrap())
            .collect();
        FiniteGroup::assemble(self.degree, elements, index, gens)
    }

    /// Greedy generating set for `h`, preferring elements of large order.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut cands = h.members.clone();
        cands.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut current = self.trivial();
        for a in cands {
            if current.order() == h.order() {
                break;
            }
            if !current.contains(a) {
                gens.push(a);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Every subgroup, sorted by order then by member positions.
    ///
    /// Starts from the cyclic subgroups and repeatedly joins a known subgroup
    /// with one more element until nothing new appears.
    pub fn subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > cap {
            return Err(Error::cap(
                "subgroup enumeration",
                cap,
                format!("group has order {}", self.order()),
            ));
        }
        let mut found: HashMap<Subgroup, Vec<usize>> = HashMap::new();
        let mut cyclic_gens = Vec::new();
        for a in 0..self.order() {
            let c = self.closure(&[a]);
            found.entry(c).or_insert_with(|| {
                cyclic_gens.push(a);
                vec![a]
            });
        }
        let mut frontier: Vec<(Subgroup, Vec<usize>)> =
            found.iter().map(|(s, g)| (s.clone(), g.clone())).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (h, gens) in &frontier {
                for &g in &cyclic_gens {
                    if h.contains(g) {
                        continue;
                    }
                    let mut gs = gens.clone();
                    gs.push(g);
                    let k = self.closure(&gs);
                    if !found.contains_key(&k) {
                        found.insert(k.clone(), gs.clone());
                        next.push((k, gs));
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = found.into_keys().collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        Ok(out)
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check_subgroup(h)?;
        Ok(self
            .generators
            .iter()
            .all(|&g| h.members.iter().all(|&a| h.contains(self.conj(g, a)))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members = (0..self.order())
            .filter(|&g| h.members.iter().all(|&a| h.contains(self.conj(g, a))))
            .collect();
        Subgroup::from_positions(members)
    }

    /// Smallest normal subgroup containing the given positions.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        let mut seen = HashSet::new();
        for &a in elems {
            for g in 0..self.order() {
                let c = self.conj(g, a);
                if seen.insert(c) {
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    /// Coset multiplication table of `G/N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<AbstractGroup> {
        if !self.is_normal(n)? {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in &n.members {
                coset_of[self.mul(g, x)] = c;
            }
        }
        let m = reps.len();
        let table = (0..m)
            .map(|i| (0..m).map(|j| coset_of[self.mul(reps[i], reps[j])]).collect())
            .collect();
        AbstractGroup::from_table(table)
    }

    /// Subgroup generated by all commutators `[a,b] = a b a⁻¹ b⁻¹`, `a, b ∈ H`.
    pub fn commutator_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        let mut seen = HashSet::from([0usize]);
        for &a in &h.members {
            for &b in &h.members {
                let c = self.mul(self.mul(a, b), self.inv(self.mul(b, a)));
                if seen.insert(c) {
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    pub fn derived_series(&self) -> DerivedSeries {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        let solvable = series.last().unwrap().is_trivial();
        let derived_length = solvable.then(|| series.len() - 1);
        DerivedSeries {
            series,
            solvable,
            derived_length,
        }
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order()).map(|g| self.conj(g, a)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn centralizer(&self, a: usize) -> Subgroup {
        Subgroup::from_positions(
            (0..self.order())
                .filter(|&g| self.mul(g, a) == self.mul(a, g))
                .collect(),
        )
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_positions(
            (0..self.order())
                .filter(|&z| {
                    self.generators
                        .iter()
                        .all(|&g| self.mul(g, z) == self.mul(z, g))
                })
                .collect(),
        )
    }

    pub fn class_structure(&self) -> ClassStructure {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for a in 0..self.order() {
            if assigned[a] {
                continue;
            }
            let c = self.conjugacy_class(a);
            for &x in &c {
                assigned[x] = true;
            }
            classes.push(c);
        }
        ClassStructure {
            classes,
            center: self.center(),
        }
    }

    /// Orbit of the 1-based point `x` and its stabilizer.
    pub fn orbit_stabilizer(&self, x: usize) -> Result<(Vec<usize>, Subgroup)> {
        if x == 0 || x > self.degree {
            return Err(Error::invalid(format!("point {x} outside 1..{}", self.degree)));
        }
        let mut orbit = vec![x];
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &g in &self.generators {
                let z = self.elements[g].apply(y);
                if !orbit.contains(&z) {
                    orbit.push(z);
                    queue.push_back(z);
                }
            }
        }
        orbit.sort_unstable();
        let stab = (0..self.order())
            .filter(|&g| self.elements[g].apply(x) == x)
            .collect();
        Ok((orbit, Subgroup::from_positions(stab)))
    }

    /// An element of order exactly `p`.
    pub fn cauchy_element(&self, p: usize) -> Result<Perm> {
        if !is_prime_u64(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !self.order().is_multiple_of(p) {
            return Err(Error::invalid(format!("{p} does not divide |G| = {}", self.order())));
        }
        (0..self.order())
            .map(|a| &self.elements[a])
            .find(|h| h.order() % p == 0)
            .map(|h| h.pow(h.order() / p))
            .ok_or_else(|| Error::Internal(format!("no element of order divisible by {p}")))
    }

    /// A Sylow `p`-subgroup, grown from a Cauchy element inside successive
    /// normalizers.
    pub fn sylow(&self, p: usize) -> Result<Subgroup> {
        if !is_prime_u64(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !self.order().is_multiple_of(p) {
            return Ok(self.trivial());
        }
        let c = self.cauchy_element(p)?;
        let mut gens = vec![self.index[&c]];
        let mut sub = self.closure(&gens);
        loop {
            let norm = self.normalizer(&sub);
            let next = norm
                .members
                .iter()
                .copied()
                .find(|&g| !sub.contains(g) && is_power_of(self.element_order(g), p));
            match next {
                Some(g) => {
                    gens.push(g);
                    sub = self.closure(&gens);
                }
                None => break,
            }
        }
        Ok(sub)
    }

    /// True iff the only normal subgroups are `1` and `G`. Checks the normal
    /// closure of one representative per conjugacy class.
    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        let classes = self.class_structure().classes;
        classes
            .iter()
            .filter(|c| c[0] != 0)
            .all(|c| self.normal_closure(&c[..1]).order() == self.order())
    }

    pub fn to_abstract(&self) -> AbstractGroup {
        let n = self.order();
        AbstractGroup {
            table: (0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect(),
        }
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Short name: `C_n`, `V4`, `S_n`, `A_n`, `D_n`, or `group of order N`.
    pub fn identify(&self) -> String {
        identify(self)
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub series: Vec<Subgroup>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
}

impl DerivedSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.series.iter().map(Subgroup::order).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ClassStructure {
    pub classes: Vec<Vec<usize>>,
    pub center: Subgroup,
}

/// A finite group given by its multiplication table; index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGroup {
    table: Vec<Vec<usize>>,
}

impl AbstractGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<AbstractGroup> {
        let g = AbstractGroup { table };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Latin-square, identity and associativity checks.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if n == 0 {
            return Err(Error::invalid("empty table"));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid("table is not square"));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::invalid("row is not a permutation"));
                }
            }
            if row[0] != i || self.table[0][i] != i {
                return Err(Error::invalid("index 0 is not the identity"));
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if std::mem::replace(&mut seen[self.table[i][j]], true) {
                    return Err(Error::invalid("column is not a permutation"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for c in 0..n {
                    if self.table[ab][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::invalid("table is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn generating_set(&self) -> Vec<usize> {
        let mut cands: Vec<usize> = (0..self.order()).collect();
        cands.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut cur = self.closure(&gens);
        for a in cands {
            if cur.iter().all(|&b| b) {
                break;
            }
            if !cur[a] {
                gens.push(a);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    /// Exhaustive isomorphism test by matching generator images.
    pub fn is_isomorphic(&self, other: &AbstractGroup) -> bool {
        let n = self.order();
        if n != other.order() {
            return false;
        }
        let mut p1: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let mut p2: Vec<usize> = (0..n).map(|a| other.element_order(a)).collect();
        let ords2 = p2.clone();
        p1.sort_unstable();
        p2.sort_unstable();
        if p1 != p2 {
            return false;
        }
        let gens = self.generating_set();
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..n).filter(|&b| ords2[b] == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&cands).map(|(&c, v)| v[c]).collect();
            if self.extends_to_iso(&gens, &images, other) {
                return true;
            }
            // odometer
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return false;
                }
                choice[k] += 1;
                if choice[k] < cands[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn extends_to_iso(&self, gens: &[usize], images: &[usize], other: &AbstractGroup) -> bool {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = other.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return false;
                }
            }
        }
        let mut hit = vec![false; n];
        for &m in &map {
            if m == usize::MAX || std::mem::replace(&mut hit[m], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

const EXHAUSTIVE_ID_LIMIT: usize = 24;

fn identify(g: &FiniteGroup) -> String {
    let n = g.order();
    if g.is_cyclic() {
        return format!("C_{n}");
    }
    if n == 4 {
        return "V4".into();
    }
    let mut candidates: Vec<(String, Box<dyn Fn() -> FiniteGroup>)> = Vec::new();
    for k in 3..=7usize {
        let fact: usize = (1..=k).product();
        if fact == n {
            candidates.push((format!("S_{k}"), Box::new(move || FiniteGroup::symmetric(k))));
        }
        if k >= 4 && fact / 2 == n {
            candidates.push((format!("A_{k}"), Box::new(move || FiniteGroup::alternating(k))));
        }
    }
    if n.is_multiple_of(2) && n >= 6 {
        let k = n / 2;
        candidates.push((format!("D_{k}"), Box::new(move || FiniteGroup::dihedral(k))));
    }
    for (name, build) in candidates {
        let h = build();
        let same = if n <= EXHAUSTIVE_ID_LIMIT {
            g.to_abstract().is_isomorphic(&h.to_abstract())
        } else {
            g.is_abelian() == h.is_abelian()
                && g.order_profile() == h.order_profile()
                && g.center().order() == h.center().order()
        };
        if same {
            return name;
        }
    }
    format!("group of order {n}")
}

/// Prime factorization of a group order, used for Sylow reports.
pub fn order_factorization(n: usize) -> Vec<(usize, u32)> {
    factor_u64(n as u64)
        .into_iter()
        .map(|(p, e)| (p as usize, e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Perm> {
        FiniteGroup::symmetric(n).elements().to_vec()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("(1 2)", 4).compose(&p("(2 3 4)", 4)).unwrap(), p("(1 2 3 4)", 4));
        let a = p("(1 3)(2 4)", 4);
        assert_eq!(a.compose(&Perm::identity(4)).unwrap(), a);
        assert!(p("(1 2)", 2).compose(&p("(1 2)", 2)).unwrap().is_identity());
        assert!(matches!(
            p("(1 2)", 2).compose(&p("(1 2)", 3)),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn cycle_examples() {
        assert!(Perm::identity(5).cycles().0.is_empty());
        let q = Perm::from_images(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(q.cycles().0, vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(q.to_string(), "(1 2 3)(4 5)");
        let c = Perm::from_images(&[2, 3, 4, 1]).unwrap();
        assert_eq!(c.cycles().0, vec![vec![1, 2, 3, 4]]);
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(p("(1 2 3)", 3).sign(), 1);
        assert_eq!(p("(1 2)(3 4)", 4).sign(), 1);
        assert_eq!(p("(1 2)", 4).sign(), -1);
        // (1 2 3) = (1 2)(2 3)
        assert_eq!(p("(1 2)(2 3)", 3), p("(1 2 3)", 3));
    }

    #[test]
    fn sign_matches_determinant() {
        // Leibniz: the determinant of a permutation matrix via inversion count.
        for q in all_perms(5) {
            let im = q.images();
            let inv = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&(i, j)| im[i] > im[j])
                .count();
            let det = if inv % 2 == 0 { 1 } else { -1 };
            assert_eq!(q.sign(), det);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(Perm::identity(3).order(), 1);
        assert_eq!(p("(1 3 5 2 4)", 5).order(), 5);
        let q = p("(1 2 3)(4 5)", 5);
        let mut k = 1;
        let mut acc = q.clone();
        while !acc.is_identity() {
            acc = q.compose(&acc).unwrap();
            k += 1;
        }
        assert_eq!(q.order(), k);
        assert_eq!(k, 6);
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate(&[p("(1 2)", 2)], 100).unwrap().order(), 2);
        let s5 = generate(&[p("(1 2 3 4 5)", 5), p("(1 2)", 5)], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(s5.order(), 120);
        let s3 = generate(&[p("(1 2 3)", 3), p("(1 2)", 3)], 100).unwrap();
        assert_eq!(s3.order(), all_perms(3).len());
        let err = generate(&[p("(1 2 3 4 5)", 5), p("(1 2)", 5)], 50).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { limit: 50, .. }));
        assert!(generate(&[], 10).is_err());
    }

    /// All subgroups by brute force over subsets (small groups only).
    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if members
                .iter()
                .all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn subgroup_examples() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.subgroups(200).unwrap().len(), 2);
        let s3 = FiniteGroup::symmetric(3);
        let subs = s3.subgroups(200).unwrap();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs.len(), brute_subgroups(&s3));
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let v4 = generate(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)], 100).unwrap();
        assert_eq!(v4.subgroups(200).unwrap().len(), 5);
        assert_eq!(brute_subgroups(&v4), 5);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.subgroups(200).unwrap().len(), brute_subgroups(&d4));
        assert!(FiniteGroup::symmetric(6).subgroups(200).is_err());
    }

    #[test]
    fn normality() {
        let s4 = FiniteGroup::symmetric(4);
        let v = s4.closure(&[
            s4.position(&p("(1 2)(3 4)", 4)).unwrap(),
            s4.position(&p("(1 3)(2 4)", 4)).unwrap(),
        ]);
        assert_eq!(v.order(), 4);
        assert!(s4.is_normal(&v).unwrap());
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.closure(&[s3.position(&p("(1 2 3)", 3)).unwrap()]);
        assert!(s3.is_normal(&a3).unwrap());
        let t = s3.closure(&[s3.position(&p("(1 2)", 3)).unwrap()]);
        assert!(!s3.is_normal(&t).unwrap());
        let bogus = Subgroup::from_positions(vec![0, s3.position(&p("(1 2 3)", 3)).unwrap()]);
        assert_eq!(s3.is_normal(&bogus), Err(Error::NotASubgroup));
    }

    #[test]
    fn quotients() {
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.quotient(&s4.whole()).unwrap().order(), 1);
        let a4 = Subgroup::from_positions(
            (0..24).filter(|&i| s4.element(i).sign() == 1).collect(),
        );
        assert_eq!(s4.quotient(&a4).unwrap().order(), 2);
        let v = s4.closure(&[
            s4.position(&p("(1 2)(3 4)", 4)).unwrap(),
            s4.position(&p("(1 3)(2 4)", 4)).unwrap(),
        ]);
        let q = s4.quotient(&v).unwrap();
        assert_eq!(q.order(), 6);
        assert!(q.is_isomorphic(&FiniteGroup::symmetric(3).to_abstract()));
        assert!(!q.is_isomorphic(&FiniteGroup::cyclic(6).to_abstract()));
        let t = s4.closure(&[s4.position(&p("(1 2)", 4)).unwrap()]);
        assert_eq!(s4.quotient(&t), Err(Error::NotNormal));
    }

    #[test]
    fn derived_series_examples() {
        let c6 = FiniteGroup::cyclic(6);
        let d = c6.derived_series();
        assert!(d.solvable);
        assert!(d.derived_length.unwrap() <= 1);
        let s4 = FiniteGroup::symmetric(4).derived_series();
        assert_eq!(s4.orders(), vec![24, 12, 4, 1]);
        assert_eq!(s4.derived_length, Some(3));
        let s5 = FiniteGroup::symmetric(5).derived_series();
        assert!(!s5.solvable);
        assert_eq!(s5.orders(), vec![120, 60]);
    }

    #[test]
    fn classes() {
        let c5 = FiniteGroup::cyclic(5);
        let cs = c5.class_structure();
        assert!(cs.classes.iter().all(|c| c.len() == 1));
        assert_eq!(cs.center.order(), 5);
        let s3 = FiniteGroup::symmetric(3);
        let cs = s3.class_structure();
        let mut sizes: Vec<usize> = cs.classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(cs.center.is_trivial());
        for a in 0..6 {
            assert_eq!(s3.conjugacy_class(a).len() * s3.centralizer(a).order(), 6);
        }
    }

    #[test]
    fn orbits() {
        let s4 = FiniteGroup::symmetric(4);
        let (o, st) = s4.orbit_stabilizer(1).unwrap();
        assert_eq!(o, vec![1, 2, 3, 4]);
        assert_eq!(st.order(), 6);
        let triv = generate(&[Perm::identity(4)], 10).unwrap();
        let (o, st) = triv.orbit_stabilizer(3).unwrap();
        assert_eq!(o, vec![3]);
        assert_eq!(st.order(), 1);
        let a4 = FiniteGroup::alternating(4);
        let (o, st) = a4.orbit_stabilizer(1).unwrap();
        assert_eq!((o.len(), st.order()), (4, 3));
        assert!(a4.orbit_stabilizer(5).is_err());
    }

    #[test]
    fn sylow_and_cauchy() {
        let s4 = FiniteGroup::symmetric(4);
        let p2 = s4.sylow(2).unwrap();
        assert_eq!(p2.order(), 8);
        s4.check_subgroup(&p2).unwrap();
        assert_eq!(s4.sylow(3).unwrap().order(), 3);
        assert!(s4.sylow(5).unwrap().is_trivial());
        assert!(s4.sylow(4).is_err());
        let s5 = FiniteGroup::symmetric(5);
        let c = s5.cauchy_element(5).unwrap();
        assert_eq!(c.order(), 5);
        assert_eq!(c.cycle_type(), vec![5]);
        let c6 = FiniteGroup::cyclic(6);
        assert_eq!(c6.cauchy_element(3).unwrap().order(), 3);
        assert_eq!(s4.cauchy_element(2).unwrap().order(), 2);
        assert!(c6.cauchy_element(5).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(FiniteGroup::alternating(5).is_simple());
        assert!(!FiniteGroup::alternating(4).is_simple());
        assert!(!FiniteGroup::cyclic(6).is_simple());
        assert!(FiniteGroup::cyclic(7).is_simple());
        assert!(!FiniteGroup::symmetric(5).is_simple());
    }

    #[test]
    fn identification() {
        let v4 = generate(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)], 100).unwrap();
        assert_eq!(v4.identify(), "V4");
        assert_eq!(FiniteGroup::symmetric(3).identify(), "S_3");
        assert_eq!(FiniteGroup::cyclic(7).identify(), "C_7");
        assert_eq!(FiniteGroup::symmetric(4).identify(), "S_4");
        assert_eq!(FiniteGroup::alternating(4).identify(), "A_4");
        assert_eq!(FiniteGroup::dihedral(4).identify(), "D_4");
        assert_eq!(FiniteGroup::symmetric(5).identify(), "S_5");
        assert_eq!(FiniteGroup::alternating(5).identify(), "A_5");
        let q8ish = generate(&[p("(1 2 3 4 5 6 7 8)", 8), p("(1 5)", 8)], 1000).unwrap();
        assert!(!q8ish.identify().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse("(1 2", None).is_err());
        assert!(Perm::parse("1 2)", None).is_err());
        assert!(Perm::parse("(1 1)", None).is_err());
        assert!(Perm::parse("(1 x)", None).is_err());
        assert!(Perm::parse("(1 5)", Some(3)).is_err());
        assert_eq!(Perm::parse("()", Some(3)).unwrap(), Perm::identity(3));
    }
}
