//! Plain-string reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Rules as `(letter, image)` pairs parsed from `a->ab;b->aa`.
pub fn rules(text: &str) -> BTreeMap<char, String> {
    text.split(';')
        .map(|r| {
            let (l, r) = r.split_once("->").unwrap();
            (l.chars().next().unwrap(), r.to_owned())
        })
        .collect()
}

pub fn apply(rules: &BTreeMap<char, String>, w: &str) -> String {
    w.chars().map(|c| rules[&c].as_str()).collect()
}

/// Iterates the rules on `start` until at least `n` letters exist.
pub fn fixpoint(text: &str, start: char, n: usize) -> String {
    let r = rules(text);
    let mut w = start.to_string();
    while w.chars().count() < n {
        let next = apply(&r, &w);
        assert!(next.len() > w.len(), "no growth");
        w = next;
    }
    w.chars().take(n).collect()
}

/// Overlapping occurrences of `w` in `x`, by direct comparison.
pub fn positions(w: &str, x: &str) -> Vec<usize> {
    let (w, x): (Vec<char>, Vec<char>) = (w.chars().collect(), x.chars().collect());
    if w.len() > x.len() {
        return Vec::new();
    }
    (0..=x.len() - w.len())
        .filter(|&i| x[i..i + w.len()] == w[..])
        .collect()
}

/// Return words to `w` in first-appearance order and the derived word,
/// read off the occurrences in `x`.
pub fn returns(w: &str, x: &str) -> (Vec<String>, String) {
    let chars: Vec<char> = x.chars().collect();
    let occ = positions(w, x);
    let mut list: Vec<String> = Vec::new();
    let mut derived = String::new();
    for pair in occ.windows(2) {
        let r: String = chars[pair[0]..pair[1]].iter().collect();
        let k = match list.iter().position(|q| *q == r) {
            Some(k) => k,
            None => {
                list.push(r);
                list.len() - 1
            }
        };
        derived.push(char::from_digit(k as u32, 36).unwrap().to_ascii_uppercase());
    }
    (list, derived)
}

pub fn factors(x: &str, len: usize) -> BTreeSet<String> {
    let chars: Vec<char> = x.chars().collect();
    chars.windows(len).map(|s| s.iter().collect()).collect()
}

/// Left and right one-letter extensions of `w` inside `x`.
pub fn extensions(w: &str, x: &str) -> (BTreeSet<char>, BTreeSet<char>) {
    let chars: Vec<char> = x.chars().collect();
    let n = w.chars().count();
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for i in positions(w, x) {
        if i > 0 {
            left.insert(chars[i - 1]);
        }
        if i + n < chars.len() {
            right.insert(chars[i + n]);
        }
    }
    (left, right)
}

/// Whether some power below Wielandt's bound maps every letter onto a word
/// containing every letter, by applying the rules to strings.
pub fn primitive_by_iteration(text: &str) -> bool {
    let r = rules(text);
    let letters: BTreeSet<char> = r.keys().copied().collect();
    let n = letters.len();
    let bound = (n - 1) * (n - 1) + 1;
    let mut images: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
    for _ in 0..bound {
        images = images.iter().map(|w| apply(&r, w)).collect();
        // Only letter sets matter; keep the words short.
        images = images
            .iter()
            .map(|w| w.chars().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        if images
            .iter()
            .all(|w| letters.iter().all(|c| w.contains(*c)))
        {
            return true;
        }
    }
    false
}
