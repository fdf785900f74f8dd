//! Permutation representations of 2-generator presentations.
//!
//! [`hom_search`] enumerates pairs `(x, y)` of permutations of `{1..k}` for
//! `k = 1, 2, …, max_degree`, each degree in lexicographic order of the image
//! lists (`x` major, `y` minor), and returns the first pair that kills every
//! relator and sends the target word to a permutation of the requested order.
//! Every evaluation of a relator or of the target word costs one unit of budget.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_integer::Integer;
use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::{Alphabet, Word};

/// Largest degree the search will enumerate.
pub const MAX_DEGREE: usize = 10;

/// Default number of word evaluations before the search gives up.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A permutation of `{0..k}`; displayed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= 256);
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// 0-based image list; `None` unless it is a bijection of `{0..k}`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let k = images.len();
        if k > 256 {
            return None;
        }
        let mut seen = alloc::vec![false; k];
        for &i in images {
            if i >= k || core::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds from 1-based cycles, e.g. `&[&[1, 2]]` for the transposition (1 2).
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p == 0 || q == 0 || p > degree || q > degree {
                    return None;
                }
                images[p - 1] = q - 1;
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, p: usize) -> usize {
        usize::from(self.images[p])
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| usize::from(i)).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u8; self.degree()];
        for (p, &q) in self.images.iter().enumerate() {
            inv[usize::from(q)] = p as u8;
        }
        Permutation { images: inv }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation {
            images: self.images.iter().map(|&p| other.images[usize::from(p)]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &q)| usize::from(q) == p)
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All permutations of degree `k` in lexicographic order of their image lists.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut cur: Vec<u8> = (0..k as u8).collect();
    let mut out = alloc::vec![Permutation { images: cur.clone() }];
    // next_permutation
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("the presentation must have exactly two generators")]
    NotTwoGenerator,
    #[error("relator schemas present; instantiate first")]
    SchemasPresent,
    #[error("target order must be at least 1")]
    InvalidTarget,
    #[error("degree {0} is outside 1..={MAX_DEGREE}")]
    InvalidDegree(usize),
    #[error("x and y must have the same degree")]
    DegreeMismatch,
}

/// Images of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PermAssignment {
    pub x: Permutation,
    pub y: Permutation,
}

impl PermAssignment {
    pub fn new(x: Permutation, y: Permutation) -> Result<Self, SearchError> {
        if x.degree() != y.degree() {
            return Err(SearchError::DegreeMismatch);
        }
        Ok(PermAssignment { x, y })
    }

    pub fn identity(degree: usize) -> Self {
        PermAssignment {
            x: Permutation::identity(degree),
            y: Permutation::identity(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    /// The permutation a word over `{x, y}` evaluates to.
    pub fn eval(&self, w: &Word) -> Permutation {
        let tables = [self.x.clone(), self.x.inverse(), self.y.clone(), self.y.inverse()];
        let code = compile(w);
        Permutation {
            images: (0..self.degree())
                .map(|p| trace(&tables, &code, p as u8))
                .collect(),
        }
    }
}

/// Letter codes: 0 = x, 1 = x⁻¹, 2 = y, 3 = y⁻¹.
fn compile(w: &Word) -> Vec<u8> {
    w.letters()
        .iter()
        .map(|l| 2 * (l.generator() as u8 - 1) + u8::from(l.is_inverse()))
        .collect()
}

fn trace(tables: &[Permutation; 4], code: &[u8], mut p: u8) -> u8 {
    for &c in code {
        p = tables[usize::from(c)].images[usize::from(p)];
    }
    p
}

fn two_generator_relators(p: &Presentation) -> Result<Vec<&Word>, SearchError> {
    if !matches!(p.alphabet(), Alphabet::Finite(names) if names.len() == 2) {
        return Err(SearchError::NotTwoGenerator);
    }
    p.explicit_relators().ok_or(SearchError::SchemasPresent)
}

/// True iff every relator evaluates to the identity.
pub fn check_assignment(p: &Presentation, a: &PermAssignment) -> Result<bool, SearchError> {
    let rels = two_generator_relators(p)?;
    Ok(rels.iter().all(|w| a.eval(w).is_identity()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub target_order: u64,
    pub max_degree: usize,
    pub budget: u64,
}

impl SearchConfig {
    pub fn new(target_order: u64, max_degree: usize) -> Self {
        SearchConfig {
            target_order,
            max_degree,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PermAssignment),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Assignments visited, index 0 is degree 1.
    pub visited: Vec<u64>,
    pub evaluations: u64,
}

/// Compiled relators and target word, shared by sequential and partitioned scans.
#[derive(Clone, Debug)]
pub struct Searcher {
    relators: Vec<Vec<u8>>,
    target: Vec<u8>,
    target_order: u64,
}

/// Result of scanning a block of `x` indices at one degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanResult {
    /// `(x index, y index)` of the first hit in the block.
    pub hit: Option<(usize, usize)>,
    pub visited: u64,
    pub evaluations: u64,
    pub exhausted: bool,
}

impl Searcher {
    pub fn new(p: &Presentation, target: &Word, target_order: u64) -> Result<Self, SearchError> {
        let rels = two_generator_relators(p)?;
        if target_order == 0 {
            return Err(SearchError::InvalidTarget);
        }
        if target.max_generator() > 2 {
            return Err(SearchError::NotTwoGenerator);
        }
        Ok(Searcher {
            relators: rels.into_iter().map(compile).collect(),
            target: compile(target),
            target_order,
        })
    }

    /// Evaluations needed to test one assignment, in the worst case.
    pub fn cost_bound(&self) -> u64 {
        self.relators.len() as u64 + 1
    }

    /// Tests one assignment; returns (accepted, evaluations spent).
    pub fn test(&self, x: &Permutation, y: &Permutation) -> (bool, u64) {
        let tables = [x.clone(), x.inverse(), y.clone(), y.inverse()];
        let k = x.degree() as u8;
        let mut spent = 0;
        for r in &self.relators {
            spent += 1;
            if (0..k).any(|p| trace(&tables, r, p) != p) {
                return (false, spent);
            }
        }
        spent += 1;
        let image = Permutation {
            images: (0..k).map(|p| trace(&tables, &self.target, p)).collect(),
        };
        (image.order() == self.target_order, spent)
    }

    /// Scans `x ∈ perms[xs]`, `y ∈ perms` in order. `charge(n)` is called after
    /// each assignment with its cost and returns false once the budget is gone.
    pub fn scan(&self, perms: &[Permutation], xs: Range<usize>, charge: &mut dyn FnMut(u64) -> bool) -> ScanResult {
        let mut res = ScanResult::default();
        for xi in xs {
            for (yi, y) in perms.iter().enumerate() {
                let (ok, spent) = self.test(&perms[xi], y);
                res.visited += 1;
                res.evaluations += spent;
                if ok {
                    res.hit = Some((xi, yi));
                    return res;
                }
                if !charge(spent) {
                    res.exhausted = true;
                    return res;
                }
            }
        }
        res
    }
}

/// Sequential exhaustive search in increasing degree.
pub fn hom_search(p: &Presentation, w: &Word, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    if config.max_degree == 0 || config.max_degree > MAX_DEGREE {
        return Err(SearchError::InvalidDegree(config.max_degree));
    }
    let searcher = Searcher::new(p, w, config.target_order)?;
    let mut used = 0u64;
    let mut report = SearchReport {
        outcome: SearchOutcome::NotFound,
        visited: Vec::new(),
        evaluations: 0,
    };
    for degree in 1..=config.max_degree {
        let perms = all_permutations(degree);
        let mut charge = |n: u64| {
            used += n;
            used <= config.budget
        };
        let res = searcher.scan(&perms, 0..perms.len(), &mut charge);
        report.visited.push(res.visited);
        report.evaluations += res.evaluations;
        if let Some((xi, yi)) = res.hit {
            report.outcome = SearchOutcome::Found(PermAssignment {
                x: perms[xi].clone(),
                y: perms[yi].clone(),
            });
            return Ok(report);
        }
        if res.exhausted {
            report.outcome = SearchOutcome::BudgetExhausted;
            return Ok(report);
        }
    }
    Ok(report)
}
