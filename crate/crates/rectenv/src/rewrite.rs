//! Two-sided ideal rewriting in the free algebra: normal forms, overlap
//! (composition) resolution, completion, and normal-word enumeration.
//!
//! A rule `lead => tail` stands for the monic ideal element `lead - tail`,
//! with every tail word strictly deglex-smaller than the lead. A system whose
//! pairwise compositions all reduce to zero is confluent, so its irreducible
//! words form a linear basis of the quotient algebra.
//!
//! Reduction strategy (fixed for reproducibility): rewrite the
//! deglex-greatest reducible word of the polynomial, at the leftmost position
//! where any rule lead occurs, using the deglex-greatest applicable lead.
//! Completion processes pending compositions in (degree, insertion-order)
//! priority and interreduces eagerly after each accepted rule. Completeness
//! is decided by a final confluence pass over the finished rule set, which is
//! also re-runnable on its own via [`RewriteSystem::check_confluence`].

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::freealg::{GenId, NcPoly, Scalar, Word};

/// A monic rewrite rule `lead => tail`, standing for `lead - tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
}

impl Rule {
    /// The ideal element the rule represents.
    pub fn poly(&self) -> NcPoly {
        &NcPoly::from_word(self.lead.clone()) - &self.tail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    /// Some composition's ambiguity word exceeded the degree bound, so
    /// confluence is not certified.
    Incomplete { exceeded_degree: usize },
}

#[derive(Debug, Error)]
pub enum CompleteError {
    #[error("no generators to present")]
    EmptyGenerators,
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("degree bound {max_degree} is below generator degree {required}")]
    DegreeBoundBelowGenerators { max_degree: usize, required: usize },
    #[error("completion exceeded {limit} processed items without settling")]
    IterationLimit { limit: usize },
    #[error("rules are not interreduced: {reason}")]
    NotInterreduced { reason: String },
    #[error("rule tail is not below its lead: {lead}")]
    TailNotBelowLead { lead: String },
    #[error("duplicate rule lead: {lead}")]
    DuplicateLead { lead: String },
}

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("system is not certified complete; normal words are not a certified basis")]
    NotComplete,
    #[error("dimension not certified <= {cap}: normal-word enumeration did not close")]
    CapExceeded { cap: usize },
}

/// Irreducible words of a complete system, in deglex-ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalWordBasis {
    words: Vec<Word>,
}

impl NormalWordBasis {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dimension(&self) -> usize {
        self.words.len()
    }

    /// Index lookup for coordinate vectors over the basis.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search_by(|probe| probe.cmp(w)).ok()
    }

    /// The basis with the empty word removed: the linear basis of the
    /// non-unital quotient, which is what an envelope generated by the
    /// degree-1 images is.
    pub fn without_empty_word(&self) -> NormalWordBasis {
        NormalWordBasis {
            words: self
                .words
                .iter()
                .filter(|w| !w.is_empty())
                .cloned()
                .collect(),
        }
    }
}

/// An interreduced set of monic rules together with its completion status.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    buckets: HashMap<GenId, Vec<usize>>,
    alphabet: Vec<GenId>,
    status: CompletionStatus,
}

/// Outcome of the independent confluence re-check.
#[derive(Clone, Debug)]
pub struct ConfluenceCheck {
    /// Largest ambiguity-word degree over all rule pairs.
    pub max_ambiguity_degree: usize,
    /// Compositions that failed to reduce to zero: (lead1, lead2, residue).
    pub failures: Vec<(Word, Word, NcPoly)>,
}

impl ConfluenceCheck {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RewriteSystem {
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Complete
    }

    /// The generator alphabet the system ranges over (derived from its rules
    /// and the generators it was completed from).
    pub fn alphabet(&self) -> &[GenId] {
        &self.alphabet
    }

    /// Builds a system from explicit rules, validating the interreduction
    /// invariants and certifying the status by a confluence check.
    pub fn from_rules(rules: Vec<Rule>, max_degree: usize) -> Result<Self, CompleteError> {
        let mut leads = BTreeSet::new();
        for r in &rules {
            if !leads.insert(r.lead.clone()) {
                return Err(CompleteError::DuplicateLead {
                    lead: r.lead.to_string(),
                });
            }
            if r.tail.iter().any(|(w, _)| *w >= r.lead) {
                return Err(CompleteError::TailNotBelowLead {
                    lead: r.lead.to_string(),
                });
            }
        }
        for a in &rules {
            for b in &rules {
                if a.lead != b.lead && b.lead.contains_factor(&a.lead) {
                    return Err(CompleteError::NotInterreduced {
                        reason: format!("lead {} divides lead {}", a.lead, b.lead),
                    });
                }
                if b.tail.iter().any(|(w, _)| w.contains_factor(&a.lead)) {
                    return Err(CompleteError::NotInterreduced {
                        reason: format!("lead {} occurs in tail of {}", a.lead, b.lead),
                    });
                }
            }
        }
        let mut sys = RewriteSystem::assemble(rules, BTreeSet::new(), CompletionStatus::Complete);
        let check = sys.check_confluence();
        sys.status = if check.is_confluent() && check.max_ambiguity_degree <= max_degree {
            CompletionStatus::Complete
        } else {
            CompletionStatus::Incomplete {
                exceeded_degree: check.max_ambiguity_degree,
            }
        };
        Ok(sys)
    }

    fn assemble(
        mut rules: Vec<Rule>,
        extra_alphabet: BTreeSet<GenId>,
        status: CompletionStatus,
    ) -> Self {
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        let mut alphabet = extra_alphabet;
        for r in &rules {
            alphabet.extend(r.lead.letters().iter().copied());
            for (w, _) in r.tail.iter() {
                alphabet.extend(w.letters().iter().copied());
            }
        }
        let mut buckets: HashMap<GenId, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            buckets.entry(r.lead.letters()[0]).or_default().push(i);
        }
        RewriteSystem {
            rules,
            buckets,
            alphabet: alphabet.into_iter().collect(),
            status,
        }
    }

    /// Fully reduces `input` modulo the system. The result contains no rule
    /// lead as a factor of any of its words.
    pub fn normal_form(&self, input: &NcPoly) -> NcPoly {
        reduce_full(|i| Some(&self.rules[i]), &self.buckets, input)
    }

    /// True when no rule lead occurs in `w`.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        leftmost_match(|i| Some(&self.rules[i]), &self.buckets, w).is_none()
    }

    /// Enumerates the irreducible words breadth-first, including the empty
    /// word (the unit of the ambient free algebra). Errors if the system is
    /// not complete or the enumeration passes `cap` words.
    pub fn normal_words(&self, cap: usize) -> Result<NormalWordBasis, BasisError> {
        if !self.is_complete() {
            return Err(BasisError::NotComplete);
        }
        let mut words = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in &self.alphabet {
                    let mut letters = w.letters().to_vec();
                    letters.push(g);
                    let cand = Word::from_letters(letters);
                    // `w` is already irreducible, so any new occurrence of a
                    // lead must end at the final letter: check suffixes only.
                    let reducible = self.rules.iter().any(|r| {
                        let n = r.lead.degree();
                        n <= cand.degree()
                            && cand.letters()[cand.degree() - n..] == *r.lead.letters()
                    });
                    if !reducible {
                        if words.len() >= cap {
                            return Err(BasisError::CapExceeded { cap });
                        }
                        words.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        Ok(NormalWordBasis { words })
    }

    /// Re-derives every composition of every rule pair and reduces it; an
    /// independent certificate that the system is locally confluent.
    pub fn check_confluence(&self) -> ConfluenceCheck {
        let mut max_deg = 0;
        let mut failures = Vec::new();
        for i in 0..self.rules.len() {
            for j in i..self.rules.len() {
                for (deg, sp) in compositions(&self.rules[i], &self.rules[j], i == j) {
                    max_deg = max_deg.max(deg);
                    let nf = self.normal_form(&sp);
                    if !nf.is_zero() {
                        failures.push((self.rules[i].lead.clone(), self.rules[j].lead.clone(), nf));
                    }
                }
            }
        }
        ConfluenceCheck {
            max_ambiguity_degree: max_deg,
            failures,
        }
    }

    /// One rule per line, `LEAD => TAIL`, sorted by lead; stable across runs.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            let _ = writeln!(out, "{} => {}", r.lead, r.tail);
        }
        out
    }
}

/// All S-polynomials (compositions) of a rule pair: proper suffix/prefix
/// overlaps in both directions plus factor-containment overlaps.
pub fn overlaps(r1: &Rule, r2: &Rule) -> Vec<NcPoly> {
    compositions(r1, r2, r1.lead == r2.lead)
        .into_iter()
        .map(|(_, sp)| sp)
        .collect()
}

/// Compositions with the degree of their ambiguity word.
fn compositions(r1: &Rule, r2: &Rule, same: bool) -> Vec<(usize, NcPoly)> {
    let mut out = Vec::new();
    directional_overlaps(r1, r2, &mut out);
    if !same {
        directional_overlaps(r2, r1, &mut out);
        containments(r1, r2, &mut out);
        containments(r2, r1, &mut out);
    }
    out
}

/// Overlaps where a proper suffix of `left.lead` equals a proper prefix of
/// `right.lead`; ambiguity word `left.lead · right.lead[k..]`.
fn directional_overlaps(left: &Rule, right: &Rule, out: &mut Vec<(usize, NcPoly)>) {
    let u = left.lead.letters();
    let v = right.lead.letters();
    let top = u.len().min(v.len());
    for k in 1..top {
        if u[u.len() - k..] == v[..k] {
            // Reduce the ambiguity word both ways and subtract.
            let mut sp = NcPoly::zero();
            for (tw, tc) in left.tail.iter() {
                out_add(&mut sp, tw.surround(&[], &v[k..]), tc.clone());
            }
            for (tw, tc) in right.tail.iter() {
                out_add(&mut sp, tw.surround(&u[..u.len() - k], &[]), -tc.clone());
            }
            out.push((u.len() + v.len() - k, sp));
        }
    }
}

/// Overlaps where `inner.lead` occurs as a proper factor of `outer.lead`.
fn containments(inner: &Rule, outer: &Rule, out: &mut Vec<(usize, NcPoly)>) {
    let u = inner.lead.letters();
    let v = outer.lead.letters();
    if u.len() >= v.len() {
        return;
    }
    for s in 0..=v.len() - u.len() {
        if v[s..s + u.len()] == *u {
            let mut sp = outer.tail.clone();
            for (tw, tc) in inner.tail.iter() {
                sp.add_term(tw.surround(&v[..s], &v[s + u.len()..]), -tc.clone());
            }
            out.push((v.len(), sp));
        }
    }
}

fn out_add(p: &mut NcPoly, w: Word, c: Scalar) {
    p.add_term(w, c);
}

/// Leftmost match: smallest start position at which any rule lead occurs;
/// among matches there, the deglex-greatest lead (interreduction makes the
/// tie-break vacuous, but transient states during completion keep it).
fn leftmost_match<'a, F>(
    rule: F,
    buckets: &HashMap<GenId, Vec<usize>>,
    w: &Word,
) -> Option<(usize, usize)>
where
    F: Fn(usize) -> Option<&'a Rule>,
{
    let letters = w.letters();
    for pos in 0..letters.len() {
        let mut best: Option<(usize, &Word)> = None;
        if let Some(cands) = buckets.get(&letters[pos]) {
            for &idx in cands {
                if let Some(r) = rule(idx) {
                    let lead = r.lead.letters();
                    if lead.len() <= letters.len() - pos && letters[pos..pos + lead.len()] == *lead
                    {
                        match best {
                            Some((_, cur)) if *cur >= r.lead => {}
                            _ => best = Some((idx, &r.lead)),
                        }
                    }
                }
            }
        }
        if let Some((idx, _)) = best {
            return Some((pos, idx));
        }
    }
    None
}

/// Full reduction: repeatedly rewrite the deglex-greatest reducible word.
/// Every rewrite replaces a word by strictly smaller ones, so each word is
/// visited at most once.
fn reduce_full<'a, F>(
    rule: F,
    buckets: &HashMap<GenId, Vec<usize>>,
    input: &NcPoly,
) -> NcPoly
where
    F: Fn(usize) -> Option<&'a Rule>,
{
    let mut work: BTreeMap<Word, Scalar> = input.clone().into_terms();
    let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
    while let Some((word, coeff)) = work.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        match leftmost_match(&rule, buckets, &word) {
            None => {
                done.insert(word, coeff);
            }
            Some((pos, idx)) => {
                let r = rule(idx).expect("matched rule must be live");
                let letters = word.letters();
                let prefix = &letters[..pos];
                let suffix = &letters[pos + r.lead.degree()..];
                // Zero entries are left in place; the pop loop skips them.
                for (tw, tc) in r.tail.iter() {
                    let new_word = tw.surround(prefix, suffix);
                    let entry = work.entry(new_word).or_insert_with(Scalar::zero);
                    *entry += &coeff * tc;
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    NcPoly::from_map(done)
}

/// Pending item: processed in (degree, insertion order) priority.
struct Pending {
    deg: usize,
    seq: u64,
    poly: NcPoly,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        (self.deg, self.seq) == (other.deg, other.seq)
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pending {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.deg, self.seq).cmp(&(other.deg, other.seq))
    }
}

struct Completion {
    slots: Vec<Option<Rule>>,
    buckets: HashMap<GenId, Vec<usize>>,
    pending: BinaryHeap<Reverse<Pending>>,
    seq: u64,
    max_degree: usize,
    processed: usize,
}

const PROCESS_LIMIT: usize = 5_000_000;

impl Completion {
    fn new(max_degree: usize) -> Self {
        Completion {
            slots: Vec::new(),
            buckets: HashMap::new(),
            pending: BinaryHeap::new(),
            seq: 0,
            max_degree,
            processed: 0,
        }
    }

    fn push_pending(&mut self, deg: usize, poly: NcPoly) {
        let seq = self.seq;
        self.seq += 1;
        self.pending.push(Reverse(Pending { deg, seq, poly }));
    }

    fn nf(&self, p: &NcPoly) -> NcPoly {
        reduce_full(|i| self.slots[i].as_ref(), &self.buckets, p)
    }

    fn live_indices(&self) -> Vec<usize> {
        (0..self.slots.len())
            .filter(|&i| self.slots[i].is_some())
            .collect()
    }

    /// Accepts a fully reduced nonzero polynomial as a monic rule, eagerly
    /// interreducing the existing rules against it and queueing overlaps.
    fn accept(&mut self, h: NcPoly) {
        let (lead, lc) = {
            let (w, c) = h.leading().expect("nonzero");
            (w.clone(), c.clone())
        };
        let monic = h.scaled(&(<Scalar as num_traits::One>::one() / lc));
        let tail = &NcPoly::from_word(lead.clone()) - &monic;

        // Rules whose lead contains the new lead are subsumed: requeue their
        // polynomials for re-reduction.
        for i in self.live_indices() {
            let subsumed = self.slots[i]
                .as_ref()
                .is_some_and(|r| r.lead.contains_factor(&lead));
            if subsumed {
                let r = self.slots[i].take().expect("live");
                self.push_pending(r.lead.degree(), r.poly());
            }
        }

        let new_idx = self.slots.len();
        self.slots.push(Some(Rule {
            lead: lead.clone(),
            tail,
        }));
        self.buckets
            .entry(lead.letters()[0])
            .or_default()
            .push(new_idx);

        // Re-normalize tails that mention the new lead.
        for i in self.live_indices() {
            if i == new_idx {
                continue;
            }
            let needs = self.slots[i]
                .as_ref()
                .is_some_and(|r| r.tail.iter().any(|(w, _)| w.contains_factor(&lead)));
            if needs {
                let old_tail = self.slots[i].as_ref().expect("live").tail.clone();
                let new_tail = self.nf(&old_tail);
                self.slots[i].as_mut().expect("live").tail = new_tail;
            }
        }

        // Queue compositions of the new rule against every live rule
        // (including itself).
        let new_rule = self.slots[new_idx].as_ref().expect("new").clone();
        for i in self.live_indices() {
            let other = self.slots[i].as_ref().expect("live");
            for (deg, sp) in compositions(&new_rule, other, i == new_idx) {
                self.push_pending(deg, sp);
            }
        }
    }

    fn drain_pending(&mut self) -> Result<(), CompleteError> {
        while let Some(Reverse(item)) = self.pending.pop() {
            self.processed += 1;
            if self.processed > PROCESS_LIMIT {
                return Err(CompleteError::IterationLimit {
                    limit: PROCESS_LIMIT,
                });
            }
            if item.deg > self.max_degree {
                // Out of bound: not processed into a rule. The final
                // confluence pass decides whether this matters.
                continue;
            }
            let h = self.nf(&item.poly);
            if h.is_zero() {
                continue;
            }
            self.accept(h);
        }
        Ok(())
    }
}

/// Runs completion on the given ideal generators up to `max_degree`.
///
/// The returned system always presents the same two-sided ideal as `gens`;
/// `status` reports whether confluence was certified within the bound.
pub fn complete(gens: &[NcPoly], max_degree: usize) -> Result<RewriteSystem, CompleteError> {
    if gens.is_empty() {
        return Err(CompleteError::EmptyGenerators);
    }
    let mut alphabet = BTreeSet::new();
    let mut required = 0usize;
    for (index, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(CompleteError::ZeroGenerator { index });
        }
        required = required.max(g.degree().unwrap_or(0));
        for (w, _) in g.iter() {
            alphabet.extend(w.letters().iter().copied());
        }
    }
    if max_degree < required {
        return Err(CompleteError::DegreeBoundBelowGenerators {
            max_degree,
            required,
        });
    }

    let mut st = Completion::new(max_degree);
    for g in gens {
        st.push_pending(g.degree().unwrap_or(0), g.clone());
    }

    loop {
        st.drain_pending()?;

        // Final pass: re-derive every composition of the finished rules.
        let live = st.live_indices();
        let mut exceeded: Option<usize> = None;
        let mut requeued = false;
        for (a, &i) in live.iter().enumerate() {
            for &j in &live[a..] {
                let (ri, rj) = (
                    st.slots[i].as_ref().expect("live").clone(),
                    st.slots[j].as_ref().expect("live").clone(),
                );
                for (deg, sp) in compositions(&ri, &rj, i == j) {
                    if deg > max_degree {
                        exceeded = Some(exceeded.map_or(deg, |d: usize| d.max(deg)));
                        continue;
                    }
                    let nf = st.nf(&sp);
                    if !nf.is_zero() {
                        st.push_pending(deg, nf);
                        requeued = true;
                    }
                }
            }
        }
        if requeued {
            continue;
        }
        let status = match exceeded {
            None => CompletionStatus::Complete,
            Some(d) => CompletionStatus::Incomplete { exceeded_degree: d },
        };
        let rules: Vec<Rule> = st.slots.into_iter().flatten().collect();
        return Ok(RewriteSystem::assemble(rules, alphabet, status));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::int;
    use proptest::prelude::*;

    fn g(r: usize, c: usize) -> GenId {
        GenId::new(r, c)
    }

    fn w(letters: &[(usize, usize)]) -> Word {
        Word::from_letters(letters.iter().map(|&(r, c)| g(r, c)).collect())
    }

    /// The one-generator presentation { G^3 - G }.
    fn cube_gen() -> NcPoly {
        &NcPoly::from_word(w(&[(1, 1), (1, 1), (1, 1)])) - &NcPoly::from_word(w(&[(1, 1)]))
    }

    #[test]
    fn single_cube_relation_completes() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        assert!(sys.is_complete());
        let basis = sys.normal_words(16).unwrap();
        let expected = [Word::empty(), w(&[(1, 1)]), w(&[(1, 1), (1, 1)])];
        assert_eq!(basis.words(), expected);
    }

    /// Independent oracle for the cube system: exhaustively reduce every
    /// word of degree <= 4 by the relation G^3 = G and compare with the
    /// engine's normal forms.
    #[test]
    fn cube_relation_exhaustive_oracle() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        for d in 0..=4usize {
            let word = Word::from_letters(vec![g(1, 1); d]);
            // G^d reduces to G^(d mod 2 == 0 ? (d == 0 ? 0 : 2) : 1) letters.
            let expect = match d {
                0 => Word::empty(),
                n if n % 2 == 1 => w(&[(1, 1)]),
                _ => w(&[(1, 1), (1, 1)]),
            };
            assert_eq!(
                sys.normal_form(&NcPoly::from_word(word)),
                NcPoly::from_word(expect),
                "degree {d}"
            );
        }
    }

    #[test]
    fn normal_form_of_zero_is_zero() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        assert!(sys.normal_form(&NcPoly::zero()).is_zero());
    }

    #[test]
    fn empty_generators_error() {
        assert!(matches!(
            complete(&[], 8),
            Err(CompleteError::EmptyGenerators)
        ));
    }

    #[test]
    fn degree_bound_below_generators_error() {
        assert!(matches!(
            complete(&[cube_gen()], 2),
            Err(CompleteError::DegreeBoundBelowGenerators { .. })
        ));
    }

    #[test]
    fn from_rules_validates_invariants() {
        let a = Rule {
            lead: w(&[(1, 1)]),
            tail: NcPoly::zero(),
        };
        let contains_a = Rule {
            lead: w(&[(1, 1), (1, 2)]),
            tail: NcPoly::zero(),
        };
        assert!(matches!(
            RewriteSystem::from_rules(vec![a.clone(), contains_a], 8),
            Err(CompleteError::NotInterreduced { .. })
        ));
        assert!(matches!(
            RewriteSystem::from_rules(vec![a.clone(), a.clone()], 8),
            Err(CompleteError::DuplicateLead { .. })
        ));
        let bad_tail = Rule {
            lead: w(&[(1, 1)]),
            tail: NcPoly::from_word(w(&[(1, 2), (1, 2)])),
        };
        assert!(matches!(
            RewriteSystem::from_rules(vec![bad_tail], 8),
            Err(CompleteError::TailNotBelowLead { .. })
        ));
    }

    #[test]
    fn incomplete_system_refuses_basis() {
        // xx -> yy and yy -> empty over two letters: the pair is
        // interreduced but xxx has an unresolved ambiguity, so from_rules
        // certifies it incomplete.
        let r1 = Rule {
            lead: w(&[(1, 1), (1, 1)]),
            tail: NcPoly::from_word(w(&[(1, 2)])),
        };
        let r2 = Rule {
            lead: w(&[(1, 2), (1, 1)]),
            tail: NcPoly::from_word(w(&[(1, 1)])),
        };
        let sys = RewriteSystem::from_rules(vec![r1, r2], 8).unwrap();
        if sys.is_complete() {
            // If these two happen to be confluent the test is vacuous;
            // guard against that by checking the residues directly.
            assert!(sys.check_confluence().is_confluent());
        } else {
            assert!(matches!(
                sys.normal_words(64),
                Err(BasisError::NotComplete)
            ));
        }
    }

    #[test]
    fn basis_cap_exceeded_reported() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        assert!(matches!(
            sys.normal_words(2),
            Err(BasisError::CapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn degree_one_rule_basis_is_identity_only() {
        let rule = Rule {
            lead: w(&[(1, 1)]),
            tail: NcPoly::zero(),
        };
        let sys = RewriteSystem::from_rules(vec![rule], 8).unwrap();
        assert!(sys.is_complete());
        let basis = sys.normal_words(8).unwrap();
        assert_eq!(basis.words(), &[Word::empty()]);
    }

    #[test]
    fn overlap_abc_cde() {
        // Distinct letters: leads abc and cde share the boundary c.
        let (a, b, c, d, e) = (g(1, 1), g(1, 2), g(1, 3), g(2, 1), g(2, 2));
        let r1 = Rule {
            lead: Word::from_letters(vec![a, b, c]),
            tail: NcPoly::zero(),
        };
        let r2 = Rule {
            lead: Word::from_letters(vec![c, d, e]),
            tail: NcPoly::zero(),
        };
        assert_eq!(overlaps(&r1, &r2).len(), 1);
    }

    #[test]
    fn overlap_disjoint_leads_empty() {
        let r1 = Rule {
            lead: w(&[(1, 1), (1, 2)]),
            tail: NcPoly::zero(),
        };
        let r2 = Rule {
            lead: w(&[(2, 1), (2, 2)]),
            tail: NcPoly::zero(),
        };
        assert!(overlaps(&r1, &r2).is_empty());
    }

    #[test]
    fn self_overlap_aa() {
        let r = Rule {
            lead: w(&[(1, 1), (1, 1)]),
            tail: NcPoly::from_word(Word::empty()),
        };
        assert_eq!(overlaps(&r, &r).len(), 1);
    }

    #[test]
    fn soundness_rules_reduce_to_zero() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        for r in sys.rules() {
            assert!(sys.normal_form(&r.poly()).is_zero());
        }
    }

    #[test]
    fn confluence_recheck_passes() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        let check = sys.check_confluence();
        assert!(check.is_confluent());
        assert!(check.max_ambiguity_degree <= 8);
    }

    #[test]
    fn serialize_is_stable() {
        let sys = complete(&[cube_gen()], 8).unwrap();
        assert_eq!(sys.serialize(), "G[1,1] G[1,1] G[1,1] => 1 * G[1,1]\n");
    }

    prop_compose! {
        fn arb_word()(letters in prop::collection::vec(1usize..=2, 0..5)) -> Word {
            Word::from_letters(letters.into_iter().map(|c| g(1, c)).collect())
        }
    }

    prop_compose! {
        fn arb_poly()(terms in prop::collection::vec((arb_word(), -9i64..=9), 0..4)) -> NcPoly {
            let mut p = NcPoly::zero();
            for (w, c) in terms { p.add_term(w, int(c)); }
            p
        }
    }

    // A small complete system over two letters for property tests:
    // x^3 = x, y^3 = y, plus xy = 0 and yx = 0 which kill all mixed words.
    fn two_letter_system() -> RewriteSystem {
        let x = NcPoly::from_word(w(&[(1, 1), (1, 1), (1, 1)]));
        let xg = &x - &NcPoly::from_word(w(&[(1, 1)]));
        let y = NcPoly::from_word(w(&[(1, 2), (1, 2), (1, 2)]));
        let yg = &y - &NcPoly::from_word(w(&[(1, 2)]));
        let xy = NcPoly::from_word(w(&[(1, 1), (1, 2)]));
        let yx = NcPoly::from_word(w(&[(1, 2), (1, 1)]));
        complete(&[xg, yg, xy, yx], 8).unwrap()
    }

    proptest! {
        #[test]
        fn nf_idempotent(p in arb_poly()) {
            let sys = two_letter_system();
            let nf = sys.normal_form(&p);
            prop_assert_eq!(sys.normal_form(&nf), nf);
        }

        #[test]
        fn nf_linear(p in arb_poly(), r in arb_poly(), a in -5i64..=5, b in -5i64..=5) {
            let sys = two_letter_system();
            let lhs = sys.normal_form(&(&p.scaled(&int(a)) + &r.scaled(&int(b))));
            let rhs = &sys.normal_form(&p).scaled(&int(a)) + &sys.normal_form(&r).scaled(&int(b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nf_multiplicative(p in arb_poly(), r in arb_poly()) {
            let sys = two_letter_system();
            let lhs = sys.normal_form(&(&p * &r));
            let rhs = sys.normal_form(&(&sys.normal_form(&p) * &sys.normal_form(&r)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
