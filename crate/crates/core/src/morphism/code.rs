//! Unique decipherability of a morphism's image set.
//!
//! Sardinas–Patterson dangling-suffix search, extended to remember the two
//! competing factorizations so that a failure comes with an explicit pair of
//! distinct words having the same image.

use std::collections::{HashSet, VecDeque};

use crate::word::Symbol;

/// Two distinct domain words (as letter-index sequences) with equal images.
pub type Collision = (Vec<usize>, Vec<usize>);

/// Searches for two distinct sequences of codeword indices whose
/// concatenations coincide. `None` means the codewords form a uniquely
/// decodable code with no repeated or empty codeword.
pub fn find_collision(codes: &[Vec<Symbol>]) -> Option<Collision> {
    if let Some(i) = codes.iter().position(Vec::is_empty) {
        return Some((vec![i], Vec::new()));
    }
    for i in 0..codes.len() {
        for j in 0..i {
            if codes[i] == codes[j] {
                return Some((vec![j], vec![i]));
            }
        }
    }

    // State: `ahead` spells `behind` followed by `dangling`.
    struct State {
        ahead: Vec<usize>,
        behind: Vec<usize>,
        dangling: Vec<Symbol>,
    }

    let mut queue = VecDeque::new();
    let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
    for (i, ci) in codes.iter().enumerate() {
        for (j, cj) in codes.iter().enumerate() {
            if i != j && ci.len() > cj.len() && ci.starts_with(cj) {
                let dangling = ci[cj.len()..].to_vec();
                if seen.insert(dangling.clone()) {
                    queue.push_back(State {
                        ahead: vec![i],
                        behind: vec![j],
                        dangling,
                    });
                }
            }
        }
    }

    while let Some(State {
        ahead,
        behind,
        dangling,
    }) = queue.pop_front()
    {
        for (k, c) in codes.iter().enumerate() {
            let mut next_behind = behind.clone();
            next_behind.push(k);
            if *c == dangling {
                return Some((ahead, next_behind));
            }
            if dangling.starts_with(c) {
                let rest = dangling[c.len()..].to_vec();
                if seen.insert(rest.clone()) {
                    queue.push_back(State {
                        ahead: ahead.clone(),
                        behind: next_behind,
                        dangling: rest,
                    });
                }
            } else if c.starts_with(&dangling) {
                // The lagging side overtakes.
                let rest = c[dangling.len()..].to_vec();
                if seen.insert(rest.clone()) {
                    queue.push_back(State {
                        ahead: next_behind,
                        behind: ahead.clone(),
                        dangling: rest,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(words: &[&str]) -> Vec<Vec<Symbol>> {
        words
            .iter()
            .map(|w| w.bytes().map(|b| Symbol(b - b'a')).collect())
            .collect()
    }

    fn spell(codes: &[Vec<Symbol>], seq: &[usize]) -> Vec<Symbol> {
        seq.iter().flat_map(|&i| codes[i].iter().copied()).collect()
    }

    #[test]
    fn prefix_code_is_uniquely_decodable() {
        assert_eq!(find_collision(&code(&["ab", "aa"])), None);
        assert_eq!(find_collision(&code(&["a", "ab", "abb"])), None);
    }

    #[test]
    fn collisions_are_genuine() {
        for words in [
            &["ab", "abab"][..],
            &["a", "ab", "ba"],
            &["ab", "ba", "aba", "b"],
            &["a", "aa"],
        ] {
            let codes = code(words);
            let (x, y) = find_collision(&codes).expect("code is not uniquely decodable");
            assert_ne!(x, y);
            assert_eq!(spell(&codes, &x), spell(&codes, &y), "{words:?}");
        }
    }

    #[test]
    fn empty_and_repeated_codewords() {
        assert!(find_collision(&code(&["", "a"])).is_some());
        assert!(find_collision(&code(&["ab", "ab"])).is_some());
    }
}
