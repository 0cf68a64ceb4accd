//! Finite groups stored by Cayley table, homomorphisms, retractions and kernels.
//!
//! Element `0` is always the identity. Permutations compose right to left:
//! `(a·b)(i) = a(b(i))`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{is_prime, Fp};

pub const DEFAULT_ORDER_CAP: usize = 1024;
pub const ISOMORPHISM_ORDER_CAP: usize = 64;
const PRIME_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<String>,
    inverses: Vec<usize>,
}

/// Input format for groups: one-line permutation images, 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        let gens: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| x.wrapping_sub(1)).collect())
            .collect();
        let labels = if self.labels.is_empty() {
            (0..gens.len()).map(|i| format!("g{i}")).collect()
        } else {
            self.labels.clone()
        };
        FiniteGroup::from_permutations(self.degree, &gens, &labels)
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

impl FiniteGroup {
    /// Closure of 0-based permutations of `{0..degree}`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], labels: &[String]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, labels, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(
        degree: usize,
        generators: &[Vec<usize>],
        labels: &[String],
        cap: usize,
    ) -> Result<Self> {
        if labels.len() != generators.len() {
            return Err(Error::Validation(format!(
                "{} labels for {} generators",
                labels.len(),
                generators.len()
            )));
        }
        for (k, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(Error::Validation(format!(
                    "generator {} ({}) is not a permutation of 1..{degree}",
                    k, labels[k]
                )));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let prod = compose(&elems[e], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCap { cap });
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])];
            }
        }
        let generators = generators.iter().map(|g| index[g]).collect();
        // Composition of permutations is associative, so only the cheap axioms need checking.
        Self::assemble(table, generators, labels.to_vec(), false)
    }

    /// Builds a group from an explicit table, verifying every group axiom.
    pub fn from_cayley(table: Vec<Vec<usize>>, generators: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Validation("Cayley table is not square or has out-of-range entries".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        Self::assemble(flat, generators, labels, true)
    }

    fn assemble(table: Vec<usize>, generators: Vec<usize>, labels: Vec<String>, check_assoc: bool) -> Result<Self> {
        let n = (table.len() as f64).sqrt() as usize;
        let bad = |msg: &str| Err(Error::Validation(format!("not a group: {msg}")));
        if n == 0 || n * n != table.len() {
            return bad("empty or non-square table");
        }
        if (0..n).any(|a| table[a] != a || table[a * n] != a) {
            return bad("element 0 is not the identity");
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0) {
                Some(b) if table[b * n + a] == 0 => inverses[a] = b,
                _ => return bad("missing inverse"),
            }
        }
        if check_assoc {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b];
                    for c in 0..n {
                        if table[ab * n + c] != table[a * n + table[b * n + c]] {
                            return bad("not associative");
                        }
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) || labels.len() != generators.len() {
            return bad("bad generator list");
        }
        let group = FiniteGroup { order: n, table, generators, labels, inverses };
        if group.closure(&group.generators).len() != n {
            return bad("generators do not generate the table");
        }
        Ok(group)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], generators: vec![], labels: vec![], inverses: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        if n == 1 {
            return Self::trivial();
        }
        Self::from_permutations(n, &[perm], &["a".to_string()]).expect("cyclic group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cayley(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn conjugate(&self, by: usize, g: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, lcm)
    }

    /// Subgroup generated by `gens`, as sorted element indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let e = out[i];
            for &g in gens {
                let x = self.mul(e, g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Greedy generating set drawn from `elements` in order.
    pub fn greedy_generators(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for &e in elements {
            if span.binary_search(&e).is_err() {
                gens.push(e);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup on the given (closed) element set, with its own table.
    /// Returns the subgroup and its embedding.
    pub fn subgroup_on(self: &Arc<Self>, elements: &[usize], generators: &[usize], labels: Vec<String>) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        if elems.first() != Some(&0) {
            return Err(Error::Validation("subgroup does not contain the identity".into()));
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                let Some(&ix) = pos.get(&self.mul(a, b)) else {
                    return Err(Error::Validation("element set is not closed".into()));
                };
                row.push(ix);
            }
            table.push(row);
        }
        let gens = generators
            .iter()
            .map(|g| pos.get(g).copied().ok_or_else(|| Error::Validation("generator outside subgroup".into())))
            .collect::<Result<Vec<_>>>()?;
        let sub = Arc::new(FiniteGroup::from_cayley(table, gens, labels)?);
        let emb = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, emb))
    }

    /// Subgroup generated by `gens` (elements of `self`).
    pub fn subgroup(self: &Arc<Self>, gens: &[usize], labels: Vec<String>) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let elems = self.closure(gens);
        self.subgroup_on(&elems, gens, labels)
    }

    /// Parses a word such as `x*y^-1`, `yz` or `1` over the generator labels.
    pub fn parse_word(&self, word: &str) -> Result<usize> {
        let mut labels: Vec<(usize, &str)> = self.labels.iter().map(|s| s.as_str()).enumerate().collect();
        labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));
        let mut acc = 0;
        let mut rest = word.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let (factor, tail) = if let Some((k, l)) = labels.iter().find(|(_, l)| !l.is_empty() && rest.starts_with(l)) {
                (self.generators[*k], &rest[l.len()..])
            } else if let Some(t) = rest.strip_prefix('1') {
                (0, t)
            } else {
                return Err(Error::Validation(format!("cannot parse word '{word}' near '{rest}'")));
            };
            let (power, tail) = match tail.strip_prefix('^') {
                Some(t) => {
                    let end = t
                        .char_indices()
                        .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                        .map_or(t.len(), |(i, _)| i);
                    let n: i64 = t[..end]
                        .parse()
                        .map_err(|_| Error::Validation(format!("bad exponent in word '{word}'")))?;
                    (n, &t[end..])
                }
                None => (1, tail),
            };
            acc = self.mul(acc, self.power(factor, power));
            rest = tail;
        }
        Ok(acc)
    }

    pub fn power(&self, g: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(g) } else { g };
        (0..n.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// Sorted multiset of element orders, an isomorphism invariant.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        v.sort_unstable();
        v
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Smallest prime `p >= floor` with `p ≡ 1 (mod exp G)`.
///
/// Every prime divisor of |G| divides the exponent, so such a `p` never divides |G|.
pub fn splitting_prime(group: &FiniteGroup, floor: u64) -> Result<u64> {
    let e = group.exponent() as u64;
    let mut p = floor.max(2);
    while p <= PRIME_SEARCH_CAP {
        if (p - 1).is_multiple_of(e) && is_prime(p) {
            return Ok(p);
        }
        p += 1;
    }
    Err(Error::Validation(format!("no splitting prime below {PRIME_SEARCH_CAP} for exponent {e}")))
}

/// Accepts an explicit prime only if `p ≡ 1 (mod exp G)`, which makes 𝔽_p a
/// splitting field with `p ∤ |G|`.
pub fn check_splitting_prime(group: &FiniteGroup, p: u64) -> Result<Fp> {
    let field = Fp::new(p)?;
    let e = group.exponent() as u64;
    if !(p - 1).is_multiple_of(e) {
        return Err(Error::NonSplittingPrime {
            p,
            detail: format!("p - 1 is not divisible by the exponent {e}"),
        });
    }
    Ok(field)
}

#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Verifies `images(ab) = images(a) images(b)` for every pair.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&x| x >= target.order()) {
            return Err(Error::Validation("homomorphism image table has the wrong shape".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::Validation("map is not a homomorphism".into()));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    /// Extends generator images along the Cayley graph, then verifies.
    pub fn from_generator_images(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, gen_images: &[usize]) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Validation(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (&g, &img) in source.generators().iter().zip(gen_images) {
                let x = source.mul(e, g);
                if images[x] == usize::MAX {
                    images[x] = target.mul(images[e], img);
                    queue.push_back(x);
                }
            }
        }
        Self::new(source, target, images)
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = (0..group.order()).collect();
        GroupHom { source: group.clone(), target: group, images }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }
    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }
    pub fn images(&self) -> &[usize] {
        &self.images
    }
    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// Kernel as a group in its own right, plus its embedding into the source.
    pub fn kernel(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let elems: Vec<usize> = (0..self.source.order()).filter(|&g| self.images[g] == 0).collect();
        let gens = self.source.greedy_generators(&elems);
        let labels = (0..gens.len()).map(|i| format!("k{i}")).collect();
        self.source.subgroup_on(&elems, &gens, labels).expect("kernel is a subgroup")
    }
}

/// An embedding `i: H → K` with a retraction `s: K → H`, `s∘i = id_H`.
#[derive(Clone, Debug)]
pub struct RetractionPair {
    embedding: GroupHom,
    retraction: GroupHom,
}

impl RetractionPair {
    pub fn new(embedding: GroupHom, retraction: GroupHom) -> Result<Self> {
        if embedding.target() != retraction.source() || embedding.source() != retraction.target() {
            return Err(Error::Validation("embedding and retraction are not composable".into()));
        }
        if !embedding.is_injective() {
            return Err(Error::Validation("embedding is not injective".into()));
        }
        let h = embedding.source();
        if (0..h.order()).any(|x| retraction.apply(embedding.apply(x)) != x) {
            return Err(Error::Validation("retraction does not restrict to the identity on the subgroup".into()));
        }
        Ok(RetractionPair { embedding, retraction })
    }

    /// Builds `H = ⟨subgroup words⟩ ≤ K` and the retraction sending the
    /// `k`-th generator of `K` to the element named by `image_words[k]`.
    /// Image words are written over `K`'s labels and must land in `H`.
    pub fn from_words(big: Arc<FiniteGroup>, subgroup_words: &[String], image_words: &[String]) -> Result<Self> {
        let h_gens = subgroup_words
            .iter()
            .map(|w| big.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        let (small, embedding) = big.subgroup(&h_gens, subgroup_words.to_vec())?;
        let images = image_words
            .iter()
            .map(|w| {
                let k = big.parse_word(w)?;
                embedding
                    .images()
                    .iter()
                    .position(|&e| e == k)
                    .ok_or_else(|| Error::Validation(format!("retraction image '{w}' is not in the subgroup")))
            })
            .collect::<Result<Vec<_>>>()?;
        let retraction = GroupHom::from_generator_images(big, small, &images)?;
        Self::new(embedding, retraction)
    }

    /// The identity section `K = H`.
    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let id = GroupHom::identity(group);
        RetractionPair { embedding: id.clone(), retraction: id }
    }

    /// Trivial subgroup with the constant retraction.
    pub fn trivial_subgroup(group: Arc<FiniteGroup>) -> Self {
        let h = Arc::new(FiniteGroup::trivial());
        let embedding = GroupHom { source: h.clone(), target: group.clone(), images: vec![0] };
        let retraction = GroupHom { source: group.clone(), target: h, images: vec![0; group.order()] };
        RetractionPair { embedding, retraction }
    }

    pub fn embedding(&self) -> &GroupHom {
        &self.embedding
    }
    pub fn retraction(&self) -> &GroupHom {
        &self.retraction
    }
    pub fn big(&self) -> &Arc<FiniteGroup> {
        self.embedding.target()
    }
    pub fn small(&self) -> &Arc<FiniteGroup> {
        self.embedding.source()
    }
}

/// Backtracking isomorphism search over images of a small generating set.
///
/// Returns the witness `phi` with `phi[g1] = g2`, or `None`.
pub fn is_isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Option<Vec<usize>>> {
    for g in [a, b] {
        if g.order() > ISOMORPHISM_ORDER_CAP {
            return Err(Error::OrderCap { cap: ISOMORPHISM_ORDER_CAP });
        }
    }
    if a.order() != b.order() || a.order_statistics() != b.order_statistics() || a.is_abelian() != b.is_abelian() {
        return Ok(None);
    }
    let all: Vec<usize> = (0..a.order()).collect();
    let gens = a.greedy_generators(&all);
    let labels = (0..gens.len()).map(|i| format!("a{i}")).collect();
    let small = Arc::new(FiniteGroup::from_cayley(a.cayley(), gens.clone(), labels)?);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order()).filter(|&x| b.element_order(x) == o).collect()
        })
        .collect();
    let mut choice = Vec::with_capacity(gens.len());
    Ok(search(&small, b, &candidates, &mut choice))
}

fn search(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, candidates: &[Vec<usize>], choice: &mut Vec<usize>) -> Option<Vec<usize>> {
    let k = choice.len();
    if k == candidates.len() {
        let hom = GroupHom::from_generator_images(a.clone(), b.clone(), choice).ok()?;
        return hom.is_injective().then_some(hom.images);
    }
    for &c in &candidates[k] {
        if choice.contains(&c) {
            continue;
        }
        choice.push(c);
        if let Some(w) = search(a, b, candidates, choice) {
            return Some(w);
        }
        choice.pop();
    }
    None
}

/// The order-12 group `⟨x, y, z | x³ = y² = z² = [x,y] = [y,z] = (xz)² = 1⟩`
/// realised on five points, together with `H = ⟨z⟩`.
pub fn two_sections_example() -> (Arc<FiniteGroup>, Vec<usize>) {
    let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let x = vec![1, 2, 0, 3, 4];
    let y = vec![0, 1, 2, 4, 3];
    let z = vec![1, 0, 2, 3, 4];
    let k = Arc::new(FiniteGroup::from_permutations(5, &[x, y, z], &labels).expect("order-12 group"));
    let h_gens = vec![k.generators()[2]];
    (k, h_gens)
}
