use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use super::poly::NcPolynomial;
use super::word::{GeneratorId, Word};
use crate::error::{Error, Result};
use crate::scalars::{Field, RationalScalar};

/// Word in rank space: each letter is the generator's precedence rank.
pub(crate) type RWord = SmallVec<[u8; 16]>;

/// Degree-lexicographic order key on rank words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Key(pub RWord);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic order given by a total precedence on generators
/// (`precedence[0]` is the smallest letter).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    precedence: Vec<GeneratorId>,
    rank: HashMap<GeneratorId, u8>,
}

impl MonomialOrder {
    pub fn new(precedence: Vec<GeneratorId>) -> Result<Self> {
        if precedence.len() > u8::MAX as usize {
            return Err(Error::InvalidParameter("too many generators".into()));
        }
        let rank: HashMap<_, _> = precedence.iter().enumerate().map(|(k, g)| (*g, k as u8)).collect();
        if rank.len() != precedence.len() {
            return Err(Error::InvalidParameter("repeated generator in precedence".into()));
        }
        Ok(Self { precedence, rank })
    }

    pub fn precedence(&self) -> &[GeneratorId] {
        &self.precedence
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.rank.contains_key(&g)
    }

    pub fn rank_of(&self, g: GeneratorId) -> Option<u8> {
        self.rank.get(&g).copied()
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        Key(self.to_rank(a)).cmp(&Key(self.to_rank(b)))
    }

    pub(crate) fn to_rank(&self, w: &Word) -> RWord {
        w.letters()
            .iter()
            .map(|g| {
                *self
                    .rank
                    .get(g)
                    .unwrap_or_else(|| panic!("generator {g} is not part of this presentation"))
            })
            .collect()
    }

    pub(crate) fn from_rank(&self, w: &[u8]) -> Word {
        Word::from_letters(w.iter().map(|r| self.precedence[*r as usize]))
    }
}

/// `lhs -> rhs`, every word of `rhs` strictly below `lhs` in the ambient order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule<C: Field = RationalScalar> {
    pub lhs: Word,
    pub rhs: NcPolynomial<C>,
}

impl<C: Field> RewriteRule<C> {
    /// The relation `lhs - rhs`.
    pub fn relation(&self) -> NcPolynomial<C> {
        NcPolynomial::word(self.lhs.clone()).sub(&self.rhs)
    }
}

impl<C: Field> fmt::Display for RewriteRule<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug)]
struct InternalRule<C> {
    lhs: RWord,
    rhs: Vec<(RWord, C)>,
}

/// Generators, an oriented rewriting system and the monomial order that
/// orients it. Immutable once built; all reductions are pure functions.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<C: Field = RationalScalar> {
    n: usize,
    order: MonomialOrder,
    rules: Vec<InternalRule<C>>,
    quad: Vec<Option<u32>>,
    other: HashMap<RWord, u32>,
    other_lengths: Vec<usize>,
}

/// What a completion run did.
#[derive(Clone, Debug)]
pub struct CompletionReport<C: Field = RationalScalar> {
    pub degree_cap: usize,
    pub overlaps_checked: usize,
    pub passes: usize,
    /// Rules created from unresolved overlaps, in the order they were found.
    pub added: Vec<RewriteRule<C>>,
}

impl<C: Field> AlgebraPresentation<C> {
    /// The free algebra on the given generators.
    pub fn free(n: usize, order: MonomialOrder) -> Self {
        Self::with_internal_rules(n, order, Vec::new())
    }

    /// Builds the presentation generated by `relations`, oriented by `order`
    /// and inter-reduced. Fails if some consequence is a nonzero constant.
    pub fn from_relations(
        n: usize,
        order: MonomialOrder,
        relations: impl IntoIterator<Item = NcPolynomial<C>>,
    ) -> Result<Self> {
        let base = Self::free(n, order);
        let rels: Vec<_> = relations.into_iter().map(|p| base.to_internal(&p)).collect();
        base.extended_internal(rels)
    }

    /// Adds relations to an existing presentation.
    pub fn with_relations(&self, relations: impl IntoIterator<Item = NcPolynomial<C>>) -> Result<Self> {
        let rels: Vec<_> = relations.into_iter().map(|p| self.to_internal(&p)).collect();
        self.extended_internal(rels)
    }

    fn extended_internal(&self, rels: Vec<BTreeMap<Key, C>>) -> Result<Self> {
        let mut current = self.clone();
        for rel in rels {
            let reduced = current.reduce_internal(rel);
            if reduced.is_empty() {
                continue;
            }
            let rule = current.orient(reduced)?;
            let mut rules = current.rules.clone();
            rules.push(rule);
            current = current.interreduced(rules)?;
        }
        Ok(current)
    }

    fn with_internal_rules(n: usize, order: MonomialOrder, rules: Vec<InternalRule<C>>) -> Self {
        let size = order.precedence.len();
        let mut quad = vec![None; size * size];
        let mut other = HashMap::new();
        let mut lengths = Vec::new();
        for (k, r) in rules.iter().enumerate() {
            if r.lhs.len() == 2 {
                quad[r.lhs[0] as usize * size + r.lhs[1] as usize] = Some(k as u32);
            } else {
                other.insert(r.lhs.clone(), k as u32);
                if !lengths.contains(&r.lhs.len()) {
                    lengths.push(r.lhs.len());
                }
            }
        }
        lengths.sort_unstable();
        Self { n, order, rules, quad, other, other_lengths: lengths }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.order.precedence
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> Vec<RewriteRule<C>> {
        self.rules
            .iter()
            .map(|r| RewriteRule { lhs: self.order.from_rank(&r.lhs), rhs: self.from_internal_vec(&r.rhs) })
            .collect()
    }

    pub fn weight_of(&self, w: &Word) -> Vec<i32> {
        w.weight(self.n)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(|r| r.rhs.iter().all(|(w, _)| w.len() == r.lhs.len()))
    }

    fn to_internal(&self, p: &NcPolynomial<C>) -> BTreeMap<Key, C> {
        let mut m = BTreeMap::new();
        for (w, c) in p.terms() {
            add_into(&mut m, Key(self.order.to_rank(w)), c.clone());
        }
        m
    }

    fn from_internal_vec(&self, v: &[(RWord, C)]) -> NcPolynomial<C> {
        NcPolynomial::from_terms(v.iter().map(|(w, c)| (self.order.from_rank(w), c.clone())))
    }

    fn from_internal(&self, m: &BTreeMap<Key, C>) -> NcPolynomial<C> {
        NcPolynomial::from_terms(m.iter().map(|(w, c)| (self.order.from_rank(&w.0), c.clone())))
    }

    /// Leftmost occurrence of a rule left-hand side: `(position, rule index)`.
    fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        let size = self.order.precedence.len();
        for pos in 0..w.len() {
            for &len in self.other_lengths.iter().filter(|&&l| l < 2) {
                if let Some(&r) = self.other.get(&w[pos..pos + len]) {
                    return Some((pos, r as usize));
                }
            }
            if pos + 2 <= w.len() {
                if let Some(r) = self.quad[w[pos] as usize * size + w[pos + 1] as usize] {
                    return Some((pos, r as usize));
                }
            }
            for &len in self.other_lengths.iter().filter(|&&l| l > 2) {
                if pos + len <= w.len() {
                    if let Some(&r) = self.other.get(&w[pos..pos + len]) {
                        return Some((pos, r as usize));
                    }
                }
            }
        }
        None
    }

    /// Whether some rule lhs ends at the last letter of `w`.
    fn has_redex_at_end(&self, w: &[u8]) -> bool {
        let size = self.order.precedence.len();
        let len = w.len();
        if len >= 2 && self.quad[w[len - 2] as usize * size + w[len - 1] as usize].is_some() {
            return true;
        }
        self.other_lengths
            .iter()
            .any(|&l| l <= len && self.other.contains_key(&w[len - l..]))
    }

    /// Reduces to normal form by always rewriting the largest reducible term.
    /// Every rewrite replaces a word by strictly smaller ones, so the largest
    /// remaining word strictly decreases and the loop terminates.
    fn reduce_internal(&self, mut work: BTreeMap<Key, C>) -> BTreeMap<Key, C> {
        let mut out = BTreeMap::new();
        while let Some((key, c)) = work.pop_last() {
            match self.find_redex(&key.0) {
                None => {
                    out.insert(key, c);
                }
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let pre = &key.0[..pos];
                    let post = &key.0[pos + rule.lhs.len()..];
                    for (m, d) in rule.rhs.iter() {
                        let mut w: RWord = SmallVec::with_capacity(pre.len() + m.len() + post.len());
                        w.extend_from_slice(pre);
                        w.extend_from_slice(m);
                        w.extend_from_slice(post);
                        add_into(&mut work, Key(w), c.mul(d));
                    }
                }
            }
        }
        out
    }

    pub fn normal_form(&self, p: &NcPolynomial<C>) -> NcPolynomial<C> {
        self.from_internal(&self.reduce_internal(self.to_internal(p)))
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPolynomial<C> {
        self.normal_form(&NcPolynomial::word(w.clone()))
    }

    /// Normal form of the product.
    pub fn multiply(&self, a: &NcPolynomial<C>, b: &NcPolynomial<C>) -> NcPolynomial<C> {
        self.normal_form(&a.mul(b))
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_redex(&self.order.to_rank(w)).is_none()
    }

    pub fn is_normal(&self, p: &NcPolynomial<C>) -> bool {
        p.terms().all(|(w, _)| self.is_normal_word(w))
    }

    /// All irreducible words of degree `d`, increasing in the monomial order.
    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        let size = self.order.precedence.len() as u8;
        let mut layer: Vec<RWord> = vec![RWord::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in layer.iter() {
                for g in 0..size {
                    let mut v = w.clone();
                    v.push(g);
                    if !self.has_redex_at_end(&v) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer.sort_by(|a, b| Key(a.clone()).cmp(&Key(b.clone())));
        layer.iter().map(|w| self.order.from_rank(w)).collect()
    }

    /// Number of degree-`d` words containing no rule lhs as a subword.
    pub fn irreducible_word_count(&self, d: usize) -> usize {
        // Transfer count over the last (max lhs length - 1) letters.
        let max_len = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1).max(1);
        let size = self.order.precedence.len() as u8;
        let mut states: HashMap<RWord, usize> = HashMap::new();
        states.insert(RWord::new(), 1);
        for _ in 0..d {
            let mut next: HashMap<RWord, usize> = HashMap::new();
            for (suffix, count) in states.iter() {
                for g in 0..size {
                    let mut v = suffix.clone();
                    v.push(g);
                    if self.has_redex_at_end(&v) {
                        continue;
                    }
                    let keep = max_len - 1;
                    let trimmed: RWord = if v.len() > keep { v[v.len() - keep..].into() } else { v };
                    *next.entry(trimmed).or_insert(0) += count;
                }
            }
            states = next;
        }
        states.values().sum()
    }

    fn orient(&self, p: BTreeMap<Key, C>) -> Result<InternalRule<C>> {
        let (lead, lc) = p.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).expect("nonzero");
        if lead.0.is_empty() {
            return Err(Error::OrientationFailure(format!(
                "{} (a nonzero constant lies in the ideal)",
                self.from_internal(&p)
            )));
        }
        let inv = lc.inv().expect("nonzero leading coefficient").neg();
        let rhs = p
            .iter()
            .rev()
            .skip(1)
            .map(|(k, c)| (k.0.clone(), c.mul(&inv)))
            .collect();
        Ok(InternalRule { lhs: lead.0, rhs })
    }

    /// Removes rules whose lhs contains another lhs, re-adding their
    /// consequences, then brings every rhs to normal form.
    fn interreduced(&self, mut rules: Vec<InternalRule<C>>) -> Result<Self> {
        loop {
            let sys = Self::with_internal_rules(self.n, self.order.clone(), rules.clone());
            let offender = (0..rules.len()).find(|&k| {
                let lhs = &rules[k].lhs;
                (0..lhs.len()).any(|start| {
                    (start + 1..=lhs.len()).any(|end| {
                        let sub = &lhs[start..end];
                        sys.lookup(sub).map_or(false, |r| r != k)
                    })
                })
            });
            let Some(k) = offender else { break };
            let removed = rules.remove(k);
            let rest = Self::with_internal_rules(self.n, self.order.clone(), rules.clone());
            let mut rel = BTreeMap::new();
            add_into(&mut rel, Key(removed.lhs.clone()), C::one());
            for (w, c) in removed.rhs.iter() {
                add_into(&mut rel, Key(w.clone()), c.neg());
            }
            let reduced = rest.reduce_internal(rel);
            if !reduced.is_empty() {
                rules.push(rest.orient(reduced)?);
            }
        }
        let sys = Self::with_internal_rules(self.n, self.order.clone(), rules.clone());
        for r in rules.iter_mut() {
            let mut m = BTreeMap::new();
            for (w, c) in r.rhs.iter() {
                add_into(&mut m, Key(w.clone()), c.clone());
            }
            r.rhs = sys.reduce_internal(m).into_iter().rev().map(|(k, c)| (k.0, c)).collect();
        }
        rules.sort_by(|a, b| Key(a.lhs.clone()).cmp(&Key(b.lhs.clone())));
        Ok(Self::with_internal_rules(self.n, self.order.clone(), rules))
    }

    fn lookup(&self, w: &[u8]) -> Option<usize> {
        if w.len() == 2 {
            let size = self.order.precedence.len();
            self.quad[w[0] as usize * size + w[1] as usize].map(|r| r as usize)
        } else {
            self.other.get(w).map(|&r| r as usize)
        }
    }

    /// Overlap ambiguities `(rule i, rule j, overlap length)` whose
    /// combined word has length at most `cap`.
    fn overlaps(&self, cap: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let max_k = ri.lhs.len().min(rj.lhs.len());
                for k in 1..max_k {
                    if ri.lhs.len() + rj.lhs.len() - k > cap {
                        continue;
                    }
                    if ri.lhs[ri.lhs.len() - k..] == rj.lhs[..k] {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Difference of the two one-step reductions of an overlap, reduced.
    fn overlap_residual(&self, i: usize, j: usize, k: usize) -> BTreeMap<Key, C> {
        let (ri, rj) = (&self.rules[i], &self.rules[j]);
        let tail = &rj.lhs[k..];
        let head = &ri.lhs[..ri.lhs.len() - k];
        let mut m = BTreeMap::new();
        for (w, c) in ri.rhs.iter() {
            let mut v = w.clone();
            v.extend_from_slice(tail);
            add_into(&mut m, Key(v), c.clone());
        }
        for (w, c) in rj.rhs.iter() {
            let mut v: RWord = head.into();
            v.extend_from_slice(w);
            add_into(&mut m, Key(v), c.neg());
        }
        self.reduce_internal(m)
    }

    /// Resolves all overlap ambiguities of total degree at most `degree_cap`,
    /// adding the oriented residues as new rules until none remain.
    pub fn complete(&self, degree_cap: usize) -> Result<(Self, CompletionReport<C>)> {
        let mut current = self.clone();
        let mut report = CompletionReport { degree_cap, overlaps_checked: 0, passes: 0, added: Vec::new() };
        loop {
            report.passes += 1;
            let mut residues = Vec::new();
            for (i, j, k) in current.overlaps(degree_cap) {
                report.overlaps_checked += 1;
                let r = current.overlap_residual(i, j, k);
                if !r.is_empty() {
                    residues.push(r);
                }
            }
            if residues.is_empty() {
                return Ok((current, report));
            }
            for r in residues {
                let reduced = current.reduce_internal(r);
                if reduced.is_empty() {
                    continue;
                }
                let rule = current.orient(reduced)?;
                report.added.push(RewriteRule {
                    lhs: current.order.from_rank(&rule.lhs),
                    rhs: current.from_internal_vec(&rule.rhs),
                });
                let mut rules = current.rules.clone();
                rules.push(rule);
                current = current.interreduced(rules)?;
            }
        }
    }

    /// Whether every overlap up to `degree_cap` already resolves.
    pub fn is_confluent_up_to(&self, degree_cap: usize) -> bool {
        self.overlaps(degree_cap)
            .into_iter()
            .all(|(i, j, k)| self.overlap_residual(i, j, k).is_empty())
    }
}

fn add_into<C: Field>(m: &mut BTreeMap<Key, C>, k: Key, c: C) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}
