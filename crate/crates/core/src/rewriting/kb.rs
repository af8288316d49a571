use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::order::{CompiledOrder, TermOrder};
use super::RewriteError;
use crate::presentations::GroupPresentation;
use crate::word::{Letter, Word};

/// `lhs → rhs` with `lhs` greater in the active order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Limits for Knuth–Bendix completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbBudget {
    pub max_rules: usize,
    pub max_length: usize,
}

impl Default for KbBudget {
    fn default() -> Self {
        KbBudget {
            max_rules: 5000,
            max_length: 200,
        }
    }
}

/// A string rewriting system over the monoid alphabet of a presentation.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    generators: Vec<String>,
    order: TermOrder,
    rules: Vec<RewriteRule>,
    confluent: bool,
    index: SuffixIndex,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    generators: Vec<String>,
    order: TermOrder,
    confluent: bool,
    rules: Vec<RewriteRule>,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.order == other.order
            && self.rules == other.rules
            && self.confluent == other.confluent
    }
}

impl RewriteSystem {
    fn build(generators: Vec<String>, order: TermOrder, rules: Vec<RewriteRule>, confluent: bool) -> Result<Self, RewriteError> {
        let rank = generators.len();
        let compiled = order.compile(rank)?;
        let mut index = SuffixIndex::new(2 * rank);
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(RewriteError::Malformed("empty left-hand side".into()));
            }
            if r.lhs.max_generator().max(r.rhs.max_generator()).is_some_and(|g| g >= rank) {
                return Err(RewriteError::Malformed(format!("rule {i} leaves the alphabet")));
            }
            if compiled.cmp(r.lhs.letters(), r.rhs.letters()) != Ordering::Greater {
                return Err(RewriteError::Malformed(format!("rule {i} is not decreasing")));
            }
            index.insert(r.lhs.letters(), i);
        }
        Ok(RewriteSystem {
            generators,
            order,
            rules,
            confluent,
            index,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    /// Rewrites to an irreducible word. Unique when the system is confluent.
    pub fn reduce(&self, w: &Word) -> Word {
        reduce_with(&self.rules, &self.index, w.letters())
    }

    /// Checks that every overlap and inclusion of left-hand sides joins.
    pub fn critical_pairs_resolve(&self) -> bool {
        let rules = &self.rules;
        for (i, a) in rules.iter().enumerate() {
            for (j, b) in rules.iter().enumerate() {
                for (u, v) in overlaps(a, b) {
                    if self.reduce(&u) != self.reduce(&v) {
                        return false;
                    }
                }
                if i != j {
                    for (u, v) in inclusions(a, b) {
                        if self.reduce(&u) != self.reduce(&v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// JSON text used for caching completed systems between runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Stored {
            generators: self.generators.clone(),
            order: self.order.clone(),
            confluent: self.confluent,
            rules: self.rules.clone(),
        })
        .expect("plain data serializes")
    }

    /// Reads a cached system. A system claiming confluence is re-checked, so
    /// a stale or edited cache cannot produce wrong answers.
    pub fn from_json(text: &str) -> Result<Self, RewriteError> {
        let s: Stored = serde_json::from_str(text).map_err(|e| RewriteError::Malformed(e.to_string()))?;
        let sys = RewriteSystem::build(s.generators, s.order, s.rules, s.confluent)?;
        if sys.confluent && !sys.critical_pairs_resolve() {
            return Err(RewriteError::Malformed("cached system marked confluent has an unresolved critical pair".into()));
        }
        Ok(sys)
    }
}

/// Trie of reversed left-hand sides, for finding a rule whose left side is
/// a suffix of the word built so far.
#[derive(Clone, Debug)]
struct SuffixIndex {
    alphabet: usize,
    children: Vec<u32>,
    rule: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl SuffixIndex {
    fn new(alphabet: usize) -> Self {
        SuffixIndex {
            alphabet,
            children: vec![NONE; alphabet],
            rule: vec![NONE],
        }
    }

    fn insert(&mut self, lhs: &[Letter], id: usize) {
        let mut node = 0usize;
        for l in lhs.iter().rev() {
            let slot = node * self.alphabet + l.rank();
            if self.children[slot] == NONE {
                self.children[slot] = self.rule.len() as u32;
                self.rule.push(NONE);
                self.children.extend(std::iter::repeat_n(NONE, self.alphabet));
            }
            node = self.children[slot] as usize;
        }
        self.rule[node] = id as u32;
    }

    fn remove(&mut self, lhs: &[Letter]) {
        let mut node = 0usize;
        for l in lhs.iter().rev() {
            node = self.children[node * self.alphabet + l.rank()] as usize;
        }
        self.rule[node] = NONE;
    }

    /// A rule whose left side is a suffix of `w`, shortest first.
    fn find(&self, w: &[Letter]) -> Option<usize> {
        let mut node = 0usize;
        for l in w.iter().rev() {
            let next = self.children[node * self.alphabet + l.rank()];
            if next == NONE {
                return None;
            }
            node = next as usize;
            if self.rule[node] != NONE {
                return Some(self.rule[node] as usize);
            }
        }
        None
    }
}

fn reduce_with(rules: &[RewriteRule], index: &SuffixIndex, w: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
    while let Some(l) = pending.pop() {
        out.push(l);
        if let Some(i) = index.find(&out) {
            let r = &rules[i];
            out.truncate(out.len() - r.lhs.len());
            pending.extend(r.rhs.letters().iter().rev());
        }
    }
    Word::from_letters(out)
}

/// Words `l1 · l2[k..]` where a proper suffix of `l1` is a prefix of `l2`,
/// with their two one-step reducts.
fn overlaps(a: &RewriteRule, b: &RewriteRule) -> Vec<(Word, Word)> {
    let (l1, l2) = (a.lhs.letters(), b.lhs.letters());
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let left: Word = a.rhs.letters().iter().chain(&l2[k..]).copied().collect();
            let right: Word = l1[..l1.len() - k].iter().chain(b.rhs.letters()).copied().collect();
            out.push((left, right));
        }
    }
    out
}

/// Occurrences of `b.lhs` inside `a.lhs`.
fn inclusions(a: &RewriteRule, b: &RewriteRule) -> Vec<(Word, Word)> {
    let (l1, l2) = (a.lhs.letters(), b.lhs.letters());
    let mut out = Vec::new();
    if l2.len() > l1.len() {
        return out;
    }
    for p in 0..=l1.len() - l2.len() {
        if l1[p..p + l2.len()] == *l2 {
            let right: Word = l1[..p]
                .iter()
                .chain(b.rhs.letters())
                .chain(&l1[p + l2.len()..])
                .copied()
                .collect();
            out.push((a.rhs.clone(), right));
        }
    }
    out
}

/// Outcome of [`kb_complete`].
#[derive(Clone, Debug, PartialEq)]
pub enum Completion {
    Complete(RewriteSystem),
    /// The budget ran out; the partial system is sound (every rule is a
    /// consequence of the relators) but reductions need not be unique.
    Incomplete {
        partial: RewriteSystem,
        reason: String,
    },
}

impl Completion {
    pub fn system(&self) -> &RewriteSystem {
        match self {
            Completion::Complete(s) => s,
            Completion::Incomplete { partial, .. } => partial,
        }
    }

    pub fn into_system(self) -> RewriteSystem {
        match self {
            Completion::Complete(s) => s,
            Completion::Incomplete { partial, .. } => partial,
        }
    }
}

struct Work {
    order: CompiledOrder,
    rules: Vec<Option<RewriteRule>>,
    index: SuffixIndex,
    live: usize,
}

impl Work {
    fn reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        let mut pending: Vec<Letter> = w.letters().iter().rev().copied().collect();
        while let Some(l) = pending.pop() {
            out.push(l);
            if let Some(i) = self.index.find(&out) {
                let r = self.rules[i].as_ref().expect("indexed rules are live");
                out.truncate(out.len() - r.lhs.len());
                pending.extend(r.rhs.letters().iter().rev());
            }
        }
        Word::from_letters(out)
    }

    fn remove(&mut self, i: usize) -> RewriteRule {
        let r = self.rules[i].take().expect("live rule");
        self.index.remove(r.lhs.letters());
        self.live -= 1;
        r
    }

    /// Adds `lhs → rhs` and interreduces: rules whose left side becomes
    /// reducible go back to the equation queue, and right sides containing
    /// the new left side are reduced.
    fn add(&mut self, lhs: Word, rhs: Word, queue: &mut VecDeque<(Word, Word)>) -> usize {
        let id = self.rules.len();
        for i in 0..self.rules.len() {
            let hit = self.rules[i].as_ref().is_some_and(|r| contains(r.lhs.letters(), lhs.letters()));
            if hit {
                let old = self.remove(i);
                queue.push_back((old.lhs, old.rhs));
            }
        }
        self.index.insert(lhs.letters(), id);
        let needle = lhs.letters().to_vec();
        self.rules.push(Some(RewriteRule { lhs, rhs }));
        self.live += 1;
        for i in 0..id {
            let stale = self.rules[i].as_ref().is_some_and(|r| contains(r.rhs.letters(), &needle));
            if stale {
                let rhs = self.rules[i].as_ref().expect("live").rhs.clone();
                let reduced = self.reduce(&rhs);
                self.rules[i].as_mut().expect("live").rhs = reduced;
            }
        }
        id
    }
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Knuth–Bendix completion of the monoid presentation `g g^-1 = g^-1 g = 1`,
/// `r = 1` for each relator `r`.
pub fn kb_complete(pres: &GroupPresentation, order: &TermOrder, budget: KbBudget) -> Result<Completion, RewriteError> {
    if budget.max_rules == 0 || budget.max_length == 0 {
        return Err(RewriteError::Budget("budget limits must be positive".into()));
    }
    let rank = pres.rank();
    let compiled = order.compile(rank)?;
    let mut work = Work {
        order: compiled,
        rules: Vec::new(),
        index: SuffixIndex::new(2 * rank),
        live: 0,
    };
    let mut queue: VecDeque<(Word, Word)> = VecDeque::new();
    for g in 0..rank {
        queue.push_back((Word::from_letters(vec![Letter::gen(g), Letter::inv(g)]), Word::identity()));
        queue.push_back((Word::from_letters(vec![Letter::inv(g), Letter::gen(g)]), Word::identity()));
    }
    for r in pres.relators() {
        queue.push_back((r.clone(), Word::identity()));
    }

    let max_additions = budget.max_rules.saturating_mul(20);
    let mut additions = 0usize;
    let mut unprocessed: VecDeque<usize> = VecDeque::new();
    let finish = |work: Work, confluent: bool| -> Result<RewriteSystem, RewriteError> {
        let mut rules: Vec<RewriteRule> = work.rules.into_iter().flatten().collect();
        rules.sort_by(|a, b| work.order.cmp(a.lhs.letters(), b.lhs.letters()));
        RewriteSystem::build(pres.generators().to_vec(), order.clone(), rules, confluent)
    };
    let incomplete = |work: Work, reason: String| -> Result<Completion, RewriteError> {
        Ok(Completion::Incomplete {
            partial: finish(work, false)?,
            reason,
        })
    };

    loop {
        while let Some((u, v)) = queue.pop_front() {
            let (a, b) = (work.reduce(&u), work.reduce(&v));
            let (lhs, rhs) = match work.order.cmp(a.letters(), b.letters()) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            if lhs.len() > budget.max_length {
                return incomplete(work, format!("rule of length {} exceeds {}", lhs.len(), budget.max_length));
            }
            let id = work.add(lhs, rhs, &mut queue);
            unprocessed.push_back(id);
            additions += 1;
            if work.live > budget.max_rules {
                return incomplete(work, format!("more than {} rules", budget.max_rules));
            }
            if additions > max_additions {
                return incomplete(work, format!("{additions} rule insertions without converging"));
            }
        }
        let Some(id) = unprocessed.pop_front() else { break };
        let Some(a) = work.rules[id].clone() else { continue };
        for j in 0..work.rules.len() {
            let Some(b) = work.rules[j].clone() else { continue };
            queue.extend(overlaps(&a, &b));
            if j != id {
                queue.extend(overlaps(&b, &a));
            }
        }
    }
    let sys = finish(work, true)?;
    debug_assert!(sys.critical_pairs_resolve());
    if !sys.critical_pairs_resolve() {
        return Err(RewriteError::Malformed("completion finished with an unresolved critical pair".into()));
    }
    Ok(Completion::Complete(sys))
}
