//! Reidemeister–Schreier rewriting for the stabilizer of point 1.

use std::collections::VecDeque;

use super::rep::PermRep;
use crate::presentation::{free_reduce, Presentation, Word};

/// Breadth-first spanning tree of the coset graph.
///
/// Cosets are visited in queue order; from each coset, generators are tried
/// in presentation order, the positive direction before the negative one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierTransversal {
    /// Transversal word for each coset (0-based).
    pub words: Vec<Word>,
    /// `tree[g][c]` is true when the edge labelled `g` leaving coset `c` is a tree edge.
    pub tree: Vec<Vec<bool>>,
}

pub fn schreier_transversal(p: &Presentation, rep: &PermRep) -> SchreierTransversal {
    let q = rep.degree();
    let n = p.generator_count();
    let mut words: Vec<Option<Word>> = vec![None; q];
    let mut tree = vec![vec![false; q]; n];
    words[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let wc = words[c].clone().unwrap();
        for g in 0..n {
            let s = rep.generator_image(g);
            let fwd = s.apply(c);
            if words[fwd].is_none() {
                words[fwd] = Some(&wc * &Word::generator(g));
                tree[g][c] = true;
                queue.push_back(fwd);
            }
            let back = s.inverse().apply(c);
            if words[back].is_none() {
                words[back] = Some(&wc * &Word::generator(g).inverse());
                tree[g][back] = true;
                queue.push_back(back);
            }
        }
    }
    SchreierTransversal {
        words: words
            .into_iter()
            .map(|w| w.expect("representation is transitive"))
            .collect(),
        tree,
    }
}

/// Presentation of `theta^-1(Stab(1))`.
///
/// Generators are the non-tree edges, named `<gen>_<coset>` (1-based
/// coset); they are listed generator-major, cosets ascending. Relators are
/// the rewrites of `w_c r_j w_c^-1` for every relator `j` (outer) and coset
/// `c` (inner); trivial rewrites are kept so the count is always `q * m`.
pub fn reidemeister_schreier(p: &Presentation, rep: &PermRep) -> Presentation {
    let q = rep.degree();
    let n = p.generator_count();
    let tr = schreier_transversal(p, rep);

    let mut index = vec![vec![None; q]; n];
    let mut names = Vec::new();
    for g in 0..n {
        for c in 0..q {
            if !tr.tree[g][c] {
                index[g][c] = Some(names.len());
                names.push(unique_name(&p.generator_names()[g], c + 1, &names, p));
            }
        }
    }

    let inverses: Vec<_> = rep.assignment().iter().map(|s| s.inverse()).collect();
    let mut relators = Vec::with_capacity(q * p.relator_count());
    for r in p.relators() {
        for start in 0..q {
            let mut raw: Vec<(usize, i64)> = Vec::new();
            let mut x = start;
            for s in r.syllables() {
                let g = s.generator;
                for _ in 0..s.exponent.unsigned_abs() {
                    if s.exponent > 0 {
                        if let Some(k) = index[g][x] {
                            raw.push((k, 1));
                        }
                        x = rep.generator_image(g).apply(x);
                    } else {
                        x = inverses[g].apply(x);
                        if let Some(k) = index[g][x] {
                            raw.push((k, -1));
                        }
                    }
                }
            }
            debug_assert_eq!(x, start, "relator does not close up in the cover");
            relators.push(free_reduce(raw).expect("letter-by-letter exponents cannot overflow"));
        }
    }
    Presentation::new(names, relators).expect("rewritten relators use only Schreier generators")
}

fn unique_name(base: &str, coset: usize, taken: &[String], p: &Presentation) -> String {
    let mut name = format!("{base}_{coset}");
    while taken.contains(&name) || p.generator_index(&name).is_some() {
        name.push('_');
    }
    name
}
