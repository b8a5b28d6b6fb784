use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;

use super::{ChainWord, ExponentPair, Process};
use crate::exact::Rational;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Frontier size above which only the best `width` pairs are expanded.
    pub width: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { width: 1 << 14 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub pair: ExponentPair<Rational>,
    pub word: ChainWord,
    pub value: f64,
    /// True when every word up to the requested depth was examined.
    pub exhaustive: bool,
}

fn rank(a: (f64, &ChainWord), b: (f64, &ChainWord)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then_with(|| a.1.len().cmp(&b.1.len()))
        .then_with(|| a.1.cmp(b.1))
}

/// Minimises `objective` over words of length `<= max_depth` applied to
/// `(0, 1)`. Ties go to the shorter word, then the lexicographically
/// smaller letter sequence (`A < B`). Distinct words reaching the same
/// pair are merged; the frontier is exhaustive while it holds at most
/// `width` pairs and a beam of the `width` best pairs beyond that.
pub fn search_pairs<F>(objective: F, max_depth: usize, opts: SearchOptions) -> SearchResult
where
    F: Fn(&ExponentPair<Rational>) -> f64 + Sync,
{
    let root = ExponentPair::trivial();
    let mut best = SearchResult {
        value: objective(&root),
        pair: root.clone(),
        word: ChainWord::empty(),
        exhaustive: true,
    };
    let mut seen: HashSet<ExponentPair<Rational>> = HashSet::from([root.clone()]);
    let mut frontier = vec![(root, ChainWord::empty())];
    for _ in 0..max_depth {
        let mut cands: Vec<(ExponentPair<Rational>, ChainWord, f64)> = frontier
            .par_iter()
            .flat_map_iter(|(p, w)| {
                [Process::A, Process::B]
                    .into_iter()
                    .map(move |l| (p.apply(l), w.prepend(l)))
            })
            .map(|(p, w)| {
                let v = objective(&p);
                (p, w, v)
            })
            .collect();
        cands.sort_by(|a, b| a.1.cmp(&b.1));
        let mut next = Vec::new();
        for (p, w, v) in cands {
            if seen.insert(p.clone()) {
                if rank((v, &w), (best.value, &best.word)) == Ordering::Less {
                    best.pair = p.clone();
                    best.word = w.clone();
                    best.value = v;
                }
                next.push((p, w, v));
            }
        }
        if next.len() > opts.width {
            next.sort_by(|a, b| rank((a.2, &a.1), (b.2, &b.1)));
            next.truncate(opts.width);
            best.exhaustive = false;
        }
        frontier = next.into_iter().map(|(p, w, _)| (p, w)).collect();
        if frontier.is_empty() {
            break;
        }
    }
    best
}
