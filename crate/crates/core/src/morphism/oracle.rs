use std::collections::HashMap;

use crate::word::{scan, Symbol, Word};

use super::Substitution;

/// How far scans of a fixed-point prefix may go.
///
/// Scans start at `initial` letters (or more, if the query needs it) and
/// double until the result stabilizes or `budget` letters have been read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanPolicy {
    pub initial: usize,
    pub budget: usize,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        ScanPolicy {
            initial: 256,
            budget: 1 << 23,
        }
    }
}

#[derive(Debug, Clone)]
struct ScannedOccurrences {
    upto: usize,
    positions: Vec<usize>,
}

/// Lazily grown prefix of the fixed point of a substitution.
///
/// Growth replaces the prefix `p` by `φ(p)`, which is again a prefix of the
/// fixed point and strictly longer. Occurrence lists are memoized per
/// factor and extended incrementally as the prefix grows.
#[derive(Debug, Clone)]
pub struct PrefixOracle {
    substitution: Substitution,
    prefix: Vec<Symbol>,
    generation: u32,
    memo: HashMap<Vec<Symbol>, ScannedOccurrences>,
}

impl PrefixOracle {
    pub fn new(substitution: Substitution) -> Self {
        let prefix = vec![substitution.letter()];
        PrefixOracle {
            substitution,
            prefix,
            generation: 0,
            memo: HashMap::new(),
        }
    }

    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    /// Number of expansion steps performed so far.
    pub fn generation(&self) -> u32 {
        self.generation
    }

    /// Length of the materialized prefix.
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Grows the materialized prefix to at least `n` letters.
    pub fn ensure(&mut self, n: usize) {
        while self.prefix.len() < n {
            let target = n.max(self.prefix.len() + 1);
            let mut next = Vec::with_capacity(target);
            for &s in &self.prefix {
                next.extend_from_slice(self.substitution.image_symbols(s));
                if next.len() >= target {
                    break;
                }
            }
            debug_assert!(next.starts_with(&self.prefix));
            debug_assert!(next.len() > self.prefix.len());
            self.prefix = next;
            self.generation += 1;
        }
    }

    /// The materialized prefix as it stands.
    pub fn symbols(&self) -> &[Symbol] {
        &self.prefix
    }

    /// The length-`n` prefix of the fixed point.
    pub fn fixed_point_prefix(&mut self, n: usize) -> Word {
        self.ensure(n);
        Word::from_raw(
            self.substitution.domain().clone(),
            self.prefix[..n].to_vec(),
        )
    }

    /// Occurrences of `w` lying entirely inside the first `upto` letters.
    pub fn occurrences(&mut self, w: &[Symbol], upto: usize) -> Vec<usize> {
        self.ensure(upto);
        let text = &self.prefix[..upto];
        let entry = self
            .memo
            .entry(w.to_vec())
            .or_insert_with(|| ScannedOccurrences {
                upto,
                positions: scan(w, text),
            });
        if entry.upto < upto {
            // Only windows ending beyond the old horizon are new.
            let start = if w.is_empty() {
                entry.upto + 1
            } else {
                (entry.upto + 1).saturating_sub(w.len())
            };
            if w.is_empty() {
                entry.positions.extend(start..=upto);
            } else {
                entry.positions.extend(
                    (start..=upto.saturating_sub(w.len()))
                        .filter(|&i| i + w.len() <= upto && text[i..i + w.len()] == *w),
                );
            }
            entry.upto = upto;
        }
        entry
            .positions
            .iter()
            .copied()
            .take_while(|&i| i + w.len() <= upto)
            .collect()
    }
}
