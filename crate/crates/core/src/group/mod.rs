//! Finite groups as indexed element sets.
//!
//! Elements are numbered by breadth-first enumeration over the generator
//! list (right multiplication), so index 0 is the identity and the order is
//! shortlex on the minimal generator words. Multiplication goes through a
//! dense Cayley table for small groups and through the stored words
//! otherwise.

mod builtin;
mod io;

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{GrcError, Result};

pub use builtin::{builtin_group, FiniteField, BUILTIN_SUITE};
pub use io::{load_group, parse_group};

/// Default cap on group orders; overridden by the `GRC_SIZE_CAP` variable.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// Groups up to this order carry a full Cayley table.
const TABLE_LIMIT: usize = 2048;

thread_local! {
    static CAP_OVERRIDE: std::cell::Cell<Option<usize>> = const { std::cell::Cell::new(None) };
}

/// Runs `f` with a different size cap on the current thread.
pub fn with_size_cap<R>(cap: usize, f: impl FnOnce() -> R) -> R {
    let prev = CAP_OVERRIDE.with(|c| c.replace(Some(cap)));
    let out = f();
    CAP_OVERRIDE.with(|c| c.set(prev));
    out
}

pub fn size_cap() -> usize {
    if let Some(cap) = CAP_OVERRIDE.with(|c| c.get()) {
        return cap;
    }
    std::env::var("GRC_SIZE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

#[derive(Debug)]
pub struct Group {
    name: String,
    order: usize,
    gen_names: Vec<String>,
    /// `right[g * ngens + s]` = g · gen_s
    right: Vec<u32>,
    words: Vec<Box<[u16]>>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    classes: OnceLock<ConjClasses>,
    derived: OnceLock<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    pub class_of: Vec<usize>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub members: Vec<Vec<u32>>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
    gens: Vec<u32>,
    is_normal: bool,
}

impl Subgroup {
    pub fn members(&self) -> &[u32] {
        &self.members
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn contains(&self, g: u32) -> bool {
        self.mask[g as usize]
    }
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }
    pub fn is_normal(&self) -> bool {
        self.is_normal
    }
    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

/// Breadth-first enumeration of the monoid generated by `gens`.
struct Enumeration<T> {
    elements: Vec<T>,
    right: Vec<u32>,
    words: Vec<Box<[u16]>>,
    parents: Vec<u32>,
}

fn enumerate<T, F>(identity: T, gens: &[T], mult: F, cap: usize) -> Result<Enumeration<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let ng = gens.len();
    let mut index: HashMap<T, u32> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Box<[u16]>> = vec![Box::new([])];
    let mut parents = vec![0u32];
    index.insert(identity, 0);
    let mut right: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (s, gen) in gens.iter().enumerate() {
            let y = mult(&elements[head], gen);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len() as u32;
                    if elements.len() >= cap {
                        return Err(GrcError::SizeCap {
                            order: elements.len() + 1,
                            cap,
                        });
                    }
                    let mut w = words[head].to_vec();
                    w.push(s as u16);
                    words.push(w.into_boxed_slice());
                    parents.push(head as u32);
                    index.insert(y.clone(), i);
                    elements.push(y);
                    i
                }
            };
            right.push(idx);
        }
        head += 1;
    }
    debug_assert_eq!(right.len(), elements.len() * ng);
    Ok(Enumeration {
        elements,
        right,
        words,
        parents,
    })
}

impl Group {
    /// Builds the group generated by `gens` inside some ambient structure
    /// with the given multiplication.
    pub(crate) fn generate<T, F>(name: &str, identity: T, gens: Vec<(String, T)>, mult: F) -> Result<Group>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        Self::generate_with_elements(name, identity, gens, mult).map(|(g, _)| g)
    }

    /// As [`Group::generate`], also returning the ambient element behind
    /// each index.
    pub(crate) fn generate_with_elements<T, F>(
        name: &str,
        identity: T,
        gens: Vec<(String, T)>,
        mult: F,
    ) -> Result<(Group, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        // drop generators that are trivial or repeat an earlier one
        let mut seen: HashSet<T> = HashSet::new();
        seen.insert(identity.clone());
        let gens: Vec<(String, T)> = gens.into_iter().filter(|(_, g)| seen.insert(g.clone())).collect();
        let gen_names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
        let gen_elems: Vec<T> = gens.into_iter().map(|(_, g)| g).collect();
        let en = enumerate(identity, &gen_elems, mult, size_cap())?;
        let grp = Self::finish(name.to_string(), gen_names, en.right, en.words, &en.parents);
        Ok((grp, en.elements))
    }

    fn finish(
        name: String,
        gen_names: Vec<String>,
        right: Vec<u32>,
        words: Vec<Box<[u16]>>,
        parents: &[u32],
    ) -> Group {
        let order = words.len();
        let ng = gen_names.len();
        let table = (order <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; order * order];
            for g in 0..order {
                t[g * order] = g as u32;
            }
            // column h is obtained from the column of its BFS parent
            for h in 1..order {
                let s = *words[h].last().unwrap() as usize;
                let parent = parents[h] as usize;
                for g in 0..order {
                    let x = t[g * order + parent] as usize;
                    t[g * order + h] = right[x * ng + s];
                }
            }
            t
        });
        let mut grp = Group {
            name,
            order,
            gen_names,
            right,
            words,
            table,
            inv: Vec::new(),
            classes: OnceLock::new(),
            derived: OnceLock::new(),
        };
        grp.inv = (0..order as u32).map(|g| grp.compute_inverse(g)).collect();
        grp
    }

    fn compute_inverse(&self, g: u32) -> u32 {
        if let Some(t) = &self.table {
            let n = self.order;
            return (0..n)
                .find(|&h| t[g as usize * n + h] == 0)
                .expect("every element has an inverse") as u32;
        }
        let mut prev = 0u32;
        let mut cur = g;
        while cur != 0 {
            prev = cur;
            cur = self.mul(cur, g);
        }
        prev
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn gens(&self) -> Vec<u32> {
        let ng = self.gen_names.len();
        (0..ng).map(|s| self.right[s]).collect()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[g as usize * self.order + h as usize];
        }
        let ng = self.gen_names.len();
        let mut x = g;
        for &s in self.words[h as usize].iter() {
            x = self.right[x as usize * ng + s as usize];
        }
        x
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    /// h⁻¹ g h
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    pub fn pow(&self, g: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.conjugacy_classes()
            .reps
            .iter()
            .fold(1, |acc, &g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.gens();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Shortlex generator word of an element, e.g. `a^2*x`; `1` for the
    /// identity.
    pub fn word(&self, g: u32) -> String {
        let w = &self.words[g as usize];
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.gen_names[w[i] as usize];
            parts.push(if j - i == 1 {
                name.clone()
            } else {
                format!("{name}^{}", j - i)
            });
            i = j;
        }
        parts.join("*")
    }

    /// Parses an element literal: `1`, `g<idx>`, or `*`-separated factors
    /// `name` / `name^k` over the generator names.
    pub fn parse_element(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GrcError::Parse("empty element".into()));
        }
        let mut acc = 0u32;
        for factor in s.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| GrcError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let g = if base == "1" {
                0
            } else if let Some(i) = self.gen_names.iter().position(|n| n == base) {
                self.right[i]
            } else if let Some(idx) = base.strip_prefix('g').and_then(|i| i.parse::<usize>().ok()) {
                if idx >= self.order {
                    return Err(GrcError::Parse(format!("element index {idx} out of range")));
                }
                idx as u32
            } else {
                return Err(GrcError::Parse(format!(
                    "unknown generator `{base}` (known: {})",
                    self.gen_names.join(", ")
                )));
            };
            acc = self.mul(acc, self.pow(g, exp));
        }
        Ok(acc)
    }

    pub fn conjugacy_classes(&self) -> &ConjClasses {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ConjClasses {
        let n = self.order;
        let gens = self.gens();
        let mut assigned = vec![false; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for g in 0..n as u32 {
            if assigned[g as usize] {
                continue;
            }
            let mut orbit = vec![g];
            assigned[g as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                for &s in &gens {
                    let y = self.conj(x, s);
                    if !assigned[y as usize] {
                        assigned[y as usize] = true;
                        orbit.push(y);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits.sort_by_key(|o| (o.len(), o[0]));
        let mut class_of = vec![0usize; n];
        for (c, o) in orbits.iter().enumerate() {
            for &g in o {
                class_of[g as usize] = c;
            }
        }
        let reps: Vec<u32> = orbits.iter().map(|o| o[0]).collect();
        let sizes = orbits.iter().map(Vec::len).collect();
        let inverse_class = reps.iter().map(|&r| class_of[self.inv(r) as usize]).collect();
        ConjClasses {
            class_of,
            reps,
            sizes,
            inverse_class,
            members: orbits,
        }
    }

    fn subgroup_from_members(&self, mut members: Vec<u32>, gens: Vec<u32>) -> Subgroup {
        members.sort_unstable();
        let mut mask = vec![false; self.order];
        for &m in &members {
            mask[m as usize] = true;
        }
        let all_gens = self.gens();
        let is_normal = gens
            .iter()
            .all(|&h| all_gens.iter().all(|&s| mask[self.conj(h, s) as usize]));
        Subgroup {
            members,
            mask,
            gens,
            is_normal,
        }
    }

    /// Smallest subgroup containing the given elements. Elements already
    /// in the subgroup generated by their predecessors are dropped from the
    /// recorded generators.
    pub fn subgroup_generated(&self, gens: &[u32]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0u32];
        let mut kept: Vec<u32> = Vec::new();
        for &s in gens {
            if mask[s as usize] {
                continue;
            }
            kept.push(s);
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                for &t in &kept {
                    let y = self.mul(x, t);
                    if !mask[y as usize] {
                        mask[y as usize] = true;
                        members.push(y);
                    }
                }
                head += 1;
            }
        }
        self.subgroup_from_members(members, kept)
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, elems: &[u32]) -> Subgroup {
        let all_gens = self.gens();
        let mut gens: Vec<u32> = elems.to_vec();
        let mut sub = self.subgroup_generated(&gens);
        loop {
            let mut extra = Vec::new();
            for &h in sub.gens() {
                for &s in &all_gens {
                    let c = self.conj(h, s);
                    if !sub.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                let mut sub = sub;
                sub.is_normal = true;
                return sub;
            }
            gens.extend(extra);
            sub = self.subgroup_generated(&gens);
        }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_generated(&self.gens())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_generated(&[])
    }

    pub fn commutator_subgroup(&self) -> &Subgroup {
        self.derived.get_or_init(|| {
            let gens = self.gens();
            let mut comms = Vec::new();
            for &a in &gens {
                for &b in &gens {
                    let c = self.commutator(a, b);
                    if c != 0 && !comms.contains(&c) {
                        comms.push(c);
                    }
                }
            }
            self.normal_closure(&comms)
        })
    }

    pub fn centre(&self) -> Subgroup {
        let gens = self.gens();
        let members: Vec<u32> = self
            .elements()
            .filter(|&z| gens.iter().all(|&s| self.mul(z, s) == self.mul(s, z)))
            .collect();
        let mut sub = self.subgroup_from_members(members.clone(), members);
        sub.is_normal = true;
        sub
    }

    /// Intersection of two subgroups.
    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let members: Vec<u32> = a.members.iter().copied().filter(|&g| b.contains(g)).collect();
        let gens = members.clone();
        let mut sub = self.subgroup_generated(&gens);
        sub.is_normal = a.is_normal && b.is_normal || sub.is_normal;
        sub
    }

    /// The subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.subgroup_generated(&gens)
    }

    /// The subgroup x⁻¹ U x.
    pub fn conjugate_subgroup(&self, u: &Subgroup, x: u32) -> Subgroup {
        let gens: Vec<u32> = u.gens.iter().map(|&g| self.conj(g, x)).collect();
        self.subgroup_generated(&gens)
    }

    /// All normal subgroups, ordered by (order, member list).
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes();
        let mut found: Vec<Subgroup> = vec![self.trivial_subgroup()];
        for &r in &classes.reps[1..] {
            let n = self.normal_closure(&[r]);
            if !found.iter().any(|f| f.members == n.members) {
                found.push(n);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let joined = self.normal_closure(&[found[i].gens.clone(), found[j].gens.clone()].concat());
                if !found.iter().any(|f| f.members == joined.members) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        for f in found.iter_mut() {
            f.is_normal = true;
        }
        found.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        found
    }

    /// All subgroups, ordered by (order, member list). Every subgroup is a
    /// join of cyclic subgroups, so closing the cyclic ones under joins
    /// reaches all of them.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut cyclic: Vec<Subgroup> = Vec::new();
        for g in self.elements() {
            let c = self.subgroup_generated(&[g]);
            if seen.insert(c.members.clone()) {
                cyclic.push(c);
            }
        }
        let mut found = cyclic.clone();
        let mut i = 0;
        while i < found.len() {
            for c in &cyclic {
                if c.is_subset_of(&found[i]) {
                    continue;
                }
                let j = self.join(&found[i], c);
                if seen.insert(j.members.clone()) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        found
    }

    /// The subgroup as a group in its own right, with the embedding of its
    /// element indices into this group.
    pub fn subgroup_as_group(&self, u: &Subgroup, name: &str) -> (Group, Vec<u32>) {
        let gens: Vec<(String, u32)> = u
            .gens
            .iter()
            .enumerate()
            .map(|(i, &g)| (format!("u{}", i + 1), g))
            .collect();
        Group::generate_with_elements(name, 0u32, gens, |a, b| self.mul(*a, *b))
            .expect("subgroup order is bounded by the parent order")
    }

    /// The quotient G/N, with the projection of element indices.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(Group, Vec<u32>)> {
        if !n.is_normal {
            return Err(GrcError::NotNormal);
        }
        // label each coset by its smallest element
        let mut coset_of = vec![u32::MAX; self.order];
        for g in self.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            for &m in &n.members {
                coset_of[self.mul(g, m) as usize] = g;
            }
        }
        let gens: Vec<(String, u32)> = self
            .gen_names
            .iter()
            .zip(self.gens())
            .map(|(name, g)| (name.clone(), coset_of[g as usize]))
            .collect();
        let (q, labels) =
            Group::generate_with_elements(&format!("{}/N", self.name), 0u32, gens, |&a, &b| {
                coset_of[self.mul(a, b) as usize]
            })?;
        let label_to_idx: HashMap<u32, u32> =
            labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        let proj = self
            .elements()
            .map(|g| label_to_idx[&coset_of[g as usize]])
            .collect();
        Ok((q, proj))
    }

    /// Checks associativity and the identity/inverse laws exhaustively for
    /// small orders and on a deterministic sample otherwise.
    pub fn check_axioms(&self) -> bool {
        let n = self.order as u32;
        let triples: Box<dyn Iterator<Item = (u32, u32, u32)>> = if self.order <= 200 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            Box::new((0..20_000u64).map(move |i| {
                let x = i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
                (
                    (x % n as u64) as u32,
                    ((x >> 20) % n as u64) as u32,
                    ((x >> 40) % n as u64) as u32,
                )
            }))
        };
        for (a, b, c) in triples {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return false;
            }
        }
        self.elements()
            .all(|g| self.mul(g, 0) == g && self.mul(0, g) == g && self.mul(g, self.inv(g)) == 0)
    }
}

/// Direct product A × B; generator names get suffixes `1` and `2`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let mut gens: Vec<(String, (u32, u32))> = Vec::new();
    for (n, g) in a.gen_names.iter().zip(a.gens()) {
        gens.push((format!("{n}1"), (g, 0)));
    }
    for (n, g) in b.gen_names.iter().zip(b.gens()) {
        gens.push((format!("{n}2"), (0, g)));
    }
    Group::generate(&format!("{}x{}", a.name, b.name), (0u32, 0u32), gens, |x, y| {
        (a.mul(x.0, y.0), b.mul(x.1, y.1))
    })
}
