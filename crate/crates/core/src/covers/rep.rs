use std::fmt;

use num_traits::Zero;

use super::perm::{perm_matrix, Permutation};
use super::CoverError;
use crate::foxcalc::GroupRingElement;
use crate::intlinalg::IntMatrix;
use crate::presentation::{Presentation, Word};

/// A transitive permutation representation of a presented group:
/// one permutation per generator, every relator acting trivially.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermRep {
    degree: usize,
    assignment: Vec<Permutation>,
}

impl PermRep {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn assignment(&self) -> &[Permutation] {
        &self.assignment
    }

    pub fn generator_image(&self, generator: usize) -> &Permutation {
        &self.assignment[generator]
    }

    /// The degree-1 representation.
    pub fn trivial(p: &Presentation) -> PermRep {
        PermRep {
            degree: 1,
            assignment: vec![Permutation::identity(1); p.generator_count()],
        }
    }

    /// Image of a word under the representation.
    pub fn eval(&self, w: &Word) -> Permutation {
        w.syllables()
            .iter()
            .fold(Permutation::identity(self.degree), |acc, s| {
                acc.then(&self.assignment[s.generator].pow(s.exponent))
            })
    }

    /// Point reached from 0-based `start` after reading `w`.
    pub fn act(&self, start: usize, w: &Word) -> usize {
        w.syllables().iter().fold(start, |x, s| {
            let g = &self.assignment[s.generator];
            let g = if s.exponent > 0 { g.clone() } else { g.inverse() };
            (0..s.exponent.unsigned_abs()).fold(x, |y, _| g.apply(y))
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RepDisplay<'a> {
        RepDisplay { rep: self, names }
    }
}

/// Checks that `candidate` (one permutation per generator) defines a
/// transitive representation of the group presented by `p`.
pub fn validate_rep(p: &Presentation, candidate: Vec<Permutation>) -> Result<PermRep, CoverError> {
    if candidate.len() != p.generator_count() {
        return Err(CoverError::WrongGeneratorCount {
            expected: p.generator_count(),
            got: candidate.len(),
        });
    }
    let degree = match candidate.first() {
        Some(s) => s.degree(),
        None => 1,
    };
    if candidate.iter().any(|s| s.degree() != degree) {
        return Err(CoverError::DegreeMismatch);
    }
    let rep = PermRep {
        degree,
        assignment: candidate,
    };
    for (j, r) in p.relators().iter().enumerate() {
        if !rep.eval(r).is_identity() {
            return Err(CoverError::RelatorNotKilled {
                relator: j,
                word: p.display_word(r).to_string(),
            });
        }
    }
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for s in &rep.assignment {
            let y = s.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let orbit = seen.iter().filter(|b| **b).count();
    if orbit != degree {
        return Err(CoverError::NotTransitive { orbit, degree });
    }
    Ok(rep)
}

/// `sum c_w * P(theta(w))` as a `q x q` integer matrix.
pub fn theta_eval(x: &GroupRingElement, rep: &PermRep) -> IntMatrix {
    let mut out = IntMatrix::zeros(rep.degree(), rep.degree());
    for (w, c) in x.terms() {
        if c.is_zero() {
            continue;
        }
        out.add_assign_scaled(&perm_matrix(&rep.eval(w)), c);
    }
    out
}

/// Parses `"a:(1 2), t:id"` (optionally with `deg=N`) against `p`.
///
/// Every generator must be assigned. Without `deg=`, the degree is the
/// largest moved point, or 1 if nothing moves.
pub fn parse_rep(p: &Presentation, text: &str) -> Result<PermRep, CoverError> {
    let syntax = |m: String| CoverError::RepSyntax(m);
    let mut items: Vec<&str> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax("unbalanced `)`".into()));
                }
            }
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax("unbalanced `(`".into()));
    }
    items.push(&text[start..]);

    let mut degree: Option<usize> = None;
    let mut cycles_for: Vec<Option<Vec<Vec<usize>>>> = vec![None; p.generator_count()];
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        if let Some(rest) = item.strip_prefix("deg") {
            let n = rest
                .trim_start()
                .strip_prefix('=')
                .and_then(|n| n.trim().parse::<usize>().ok())
                .filter(|n| *n >= 1)
                .ok_or_else(|| syntax(format!("bad degree `{item}`")))?;
            degree = Some(n);
            continue;
        }
        let (name, perm) = item
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `name:permutation`, found `{item}`")))?;
        let name = name.trim();
        let g = p
            .generator_index(name)
            .ok_or_else(|| CoverError::UnknownGenerator(name.to_string()))?;
        if cycles_for[g].is_some() {
            return Err(syntax(format!("generator `{name}` assigned twice")));
        }
        cycles_for[g] = Some(parse_cycles(perm.trim())?);
    }
    let mut assigned = Vec::with_capacity(p.generator_count());
    for (g, c) in cycles_for.into_iter().enumerate() {
        match c {
            Some(c) => assigned.push(c),
            None => return Err(CoverError::MissingGenerator(p.generator_names()[g].clone())),
        }
    }
    let moved = assigned.iter().flatten().flatten().copied().max().unwrap_or(1);
    let degree = degree.unwrap_or(moved);
    if moved > degree {
        return Err(syntax(format!("point {moved} exceeds deg={degree}")));
    }
    let perms = assigned
        .iter()
        .map(|c| Permutation::from_cycles(degree, c))
        .collect::<Result<Vec<_>, _>>()?;
    validate_rep(p, perms)
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, CoverError> {
    if text == "id" || text == "()" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| CoverError::RepSyntax(format!("bad cycle notation `{text}`")))?;
        let inner = &rest[1..=inner_end];
        let points = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CoverError::RepSyntax(format!("bad point `{s}` in `{text}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(points);
        rest = rest[inner_end + 2..].trim_start();
    }
    Ok(out)
}

pub struct RepDisplay<'a> {
    rep: &'a PermRep,
    names: &'a [String],
}

impl fmt::Display for RepDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved = self
            .rep
            .assignment
            .iter()
            .flat_map(|s| s.cycles().into_iter().flatten())
            .max()
            .unwrap_or(1);
        let mut parts = Vec::new();
        if moved < self.rep.degree {
            parts.push(format!("deg={}", self.rep.degree));
        }
        for (name, s) in self.names.iter().zip(&self.rep.assignment) {
            parts.push(format!("{name}:{s}"));
        }
        f.write_str(&parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foxcalc::fox_derivative;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn validation_examples() {
        let bs35 = pres("< a, t | t a^3 t^-1 a^-5 >");
        let rep = validate_rep(&bs35, vec![Permutation::swap(), Permutation::identity(2)]).unwrap();
        assert_eq!(rep.degree(), 2);

        let bs24 = pres("< a, t | t a^2 t^-1 a^-4 >");
        assert!(matches!(
            validate_rep(&bs24, vec![Permutation::identity(2), Permutation::identity(2)]),
            Err(CoverError::NotTransitive { orbit: 1, degree: 2 })
        ));

        let m = pres("< s1, s2 | s1^2 s2^3 >");
        assert!(matches!(
            validate_rep(&m, vec![Permutation::swap(), Permutation::swap()]),
            Err(CoverError::RelatorNotKilled { relator: 0, .. })
        ));
        assert!(matches!(
            validate_rep(&m, vec![Permutation::swap()]),
            Err(CoverError::WrongGeneratorCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            validate_rep(&m, vec![Permutation::identity(3), Permutation::identity(2)]),
            Err(CoverError::DegreeMismatch)
        ));
    }

    #[test]
    fn parse_and_print() {
        let bs = pres("< a, t | t a^3 t^-1 a^-5 >");
        let rep = parse_rep(&bs, "a:id, t:(1 2)").unwrap();
        assert_eq!(rep.generator_image(1), &Permutation::swap());
        assert_eq!(rep.display(bs.generator_names()).to_string(), "a:id, t:(1 2)");

        let free = pres("< a, b | >");
        let rep = parse_rep(&free, "deg=3, a:(1 2 3), b:id").unwrap();
        assert_eq!(rep.degree(), 3);
        let rep = parse_rep(&free, "a:(1,3), b:(2 3)").unwrap();
        assert_eq!(rep.degree(), 3);
        let text = rep.display(free.generator_names()).to_string();
        assert_eq!(parse_rep(&free, &text).unwrap(), rep);

        let rep = parse_rep(&free, "deg=4, a:(1 2)(3 4), b:(2 3)").unwrap();
        assert_eq!(rep.display(free.generator_names()).to_string(), "a:(1 2)(3 4), b:(2 3)");

        assert!(matches!(parse_rep(&free, "a:(1 2)"), Err(CoverError::MissingGenerator(g)) if g == "b"));
        assert!(matches!(parse_rep(&free, "a:(1 2), c:id"), Err(CoverError::UnknownGenerator(_))));
        assert!(parse_rep(&free, "a:(1 2, b:id").is_err());
        assert!(parse_rep(&free, "deg=1, a:(1 2), b:id").is_err());
        assert_eq!(parse_rep(&free, "a:id, b:id").unwrap(), PermRep::trivial(&free));
    }

    #[test]
    fn theta_of_strebel_derivative() {
        // G_{2,4,3}: r = t^3 a^2 t^-3 a^-4, theta(a) = swap, theta(t) = id
        let p = pres("< a, t | t^3 a^2 t^-3 a^-4 >");
        let rep = parse_rep(&p, "a:(1 2), t:id").unwrap();
        let d = fox_derivative(&p.relators()[0], 0);
        assert_eq!(theta_eval(&d, &rep), IntMatrix::from_i64_rows(&[&[-1, -1], &[-1, -1]]));
        assert!(theta_eval(&GroupRingElement::zero(), &rep).is_zero());
    }

    #[test]
    fn eval_agrees_with_pointwise_action() {
        let p = pres("< a, b | >");
        let rep = parse_rep(&p, "a:(1 2 3 4), b:(2 4)").unwrap();
        let w: Word = crate::presentation::free_reduce([(0, 3), (1, -1), (0, -2), (1, 5)]).unwrap();
        let s = rep.eval(&w);
        for i in 0..4 {
            assert_eq!(rep.act(i, &w), s.apply(i));
        }
    }
}
