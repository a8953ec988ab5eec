//! Ranks and homogeneous generators of connected filtrations of polynomial algebras.
//!
//! A filtration is presented by spanning sets of its levels `A_0 ⊆ A_1 ⊆ ... ⊆ A_k`
//! inside `Q[z^1..z^N]`, all of total degree at most a bound `D`. At step `i+1`
//! the level is compared with `S_i`, the span of all products of the generators
//! chosen so far whose constructed weight is at most `i+1`; the quotient gives
//! `d_{i+1}` and its basis representatives become the new generators.

pub mod echelon;

use crate::field::{BasePolynomial, Rational};

pub use echelon::Echelon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationPresentation {
    pub name: String,
    pub vars: Vec<String>,
    pub bound: u32,
    /// `levels[i]` spans `A_i`.
    pub levels: Vec<Vec<BasePolynomial>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("{what} has total degree {degree}, above the bound {bound}")]
    DegreeBoundExceeded { what: String, degree: u32, bound: u32 },
    #[error("level 0 does not span exactly the constants")]
    NotConnected,
    #[error("level {0} is not contained in the next level")]
    NotNested(usize),
    #[error("presentation has no levels")]
    NoLevels,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub polynomial: BasePolynomial,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAnalysis {
    /// `rank[i-1] = d_i`.
    pub rank: Vec<usize>,
    pub generators: Vec<Generator>,
}

impl FiltrationPresentation {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn height(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    fn check(&self) -> Result<Vec<Echelon>, GradedError> {
        if self.levels.is_empty() {
            return Err(GradedError::NoLevels);
        }
        let n = self.nvars();
        for (i, level) in self.levels.iter().enumerate() {
            for p in level {
                let degree = p.total_degree().unwrap_or(0);
                if degree > self.bound {
                    return Err(GradedError::DegreeBoundExceeded {
                        what: format!("a generator of level {i}"),
                        degree,
                        bound: self.bound,
                    });
                }
            }
        }
        let spans: Vec<Echelon> = self.levels.iter().map(|l| Echelon::from_polys(n, l)).collect();
        let constants = Echelon::from_polys(n, [&BasePolynomial::one(n)]);
        if !spans[0].same_span(&constants) {
            return Err(GradedError::NotConnected);
        }
        for i in 0..spans.len() - 1 {
            if !self.levels[i].iter().all(|p| spans[i + 1].contains(p)) {
                return Err(GradedError::NotNested(i));
            }
        }
        Ok(spans)
    }

    pub fn analyse(&self) -> Result<GradedAnalysis, GradedError> {
        let spans = self.check()?;
        let n = self.nvars();
        let mut generators: Vec<Generator> = Vec::new();
        let mut rank = Vec::with_capacity(self.height());
        for (i, span) in spans.iter().enumerate().skip(1) {
            let target = i as u32;
            let products = products_up_to(&generators, target, n, self.bound)?;
            let mut s = Echelon::from_polys(n, &products);
            let mut count = 0;
            for row in span.basis() {
                if s.insert(&row) {
                    generators.push(Generator { polynomial: row, weight: target });
                    count += 1;
                }
            }
            rank.push(count);
        }
        Ok(GradedAnalysis { rank, generators })
    }

    pub fn compute_rank(&self) -> Result<Vec<usize>, GradedError> {
        Ok(self.analyse()?.rank)
    }

    pub fn extract_homogeneous_generators(&self) -> Result<Vec<Generator>, GradedError> {
        Ok(self.analyse()?.generators)
    }

    /// Whether products of the generators of weight at most `i` span level `i`,
    /// for every level.
    pub fn reconstructs(&self, generators: &[Generator]) -> Result<bool, GradedError> {
        let spans = self.check()?;
        let n = self.nvars();
        for (i, span) in spans.iter().enumerate() {
            let products = products_up_to(generators, i as u32, n, self.bound)?;
            if !Echelon::from_polys(n, &products).same_span(span) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The standard presentation of the graded algebra of `R^{(d_1,...,d_k)}`:
    /// `d_w` variables of weight `w`, level `i` spanned by the monomials of weight `<= i`.
    pub fn standard(rank: &[usize]) -> FiltrationPresentation {
        let mut vars = Vec::new();
        let mut weights = Vec::new();
        for (w, &d) in rank.iter().enumerate() {
            for j in 0..d {
                vars.push(format!("z{}_{}", w + 1, j + 1));
                weights.push(w as u32 + 1);
            }
        }
        let n = vars.len();
        let k = rank.len() as u32;
        let mut levels = Vec::new();
        for i in 0..=k {
            let mut level = Vec::new();
            monomials_of_weight_at_most(&weights, i, &mut vec![0; n], 0, &mut level);
            levels.push(level);
        }
        FiltrationPresentation { name: "standard".into(), vars, bound: k, levels }
    }
}

fn monomials_of_weight_at_most(weights: &[u32], budget: u32, exps: &mut Vec<u32>, from: usize, out: &mut Vec<BasePolynomial>) {
    out.push(BasePolynomial::monomial(crate::field::BaseMonomial(exps.clone()), Rational::from_integer(1.into())));
    for j in from..weights.len() {
        if weights[j] <= budget {
            exps[j] += 1;
            monomials_of_weight_at_most(weights, budget - weights[j], exps, j, out);
            exps[j] -= 1;
        }
    }
}

/// All products of generators (the empty product included) of total weight `<= budget`.
fn products_up_to(
    generators: &[Generator],
    budget: u32,
    nvars: usize,
    bound: u32,
) -> Result<Vec<BasePolynomial>, GradedError> {
    fn rec(
        generators: &[Generator],
        from: usize,
        budget: u32,
        current: &BasePolynomial,
        bound: u32,
        out: &mut Vec<BasePolynomial>,
    ) -> Result<(), GradedError> {
        out.push(current.clone());
        for j in from..generators.len() {
            let g = &generators[j];
            if g.weight > budget {
                continue;
            }
            let next = current * &g.polynomial;
            let degree = next.total_degree().unwrap_or(0);
            if degree > bound {
                return Err(GradedError::DegreeBoundExceeded {
                    what: "a product of generators".into(),
                    degree,
                    bound,
                });
            }
            rec(generators, j, budget - g.weight, &next, bound, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(generators, 0, budget, &BasePolynomial::one(nvars), bound, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> BasePolynomial {
        BasePolynomial::var(2, i)
    }

    fn one() -> BasePolynomial {
        BasePolynomial::one(2)
    }

    fn presentation(levels: Vec<Vec<BasePolynomial>>) -> FiltrationPresentation {
        FiltrationPresentation { name: "P".into(), vars: vec!["z1".into(), "z2".into()], bound: 4, levels }
    }

    #[test]
    fn two_variable_example() {
        let p = presentation(vec![
            vec![one()],
            vec![one(), z(0)],
            vec![one(), z(0), &z(0) * &z(0), z(1)],
        ]);
        assert_eq!(p.compute_rank().unwrap(), vec![1, 1]);
    }

    #[test]
    fn sheared_generator() {
        let p = presentation(vec![
            vec![one()],
            vec![one(), z(0)],
            vec![one(), z(0), &z(0) * &z(0), &z(1) + &(&z(0) * &z(0))],
        ]);
        let g = p.extract_homogeneous_generators().unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], Generator { polynomial: z(0), weight: 1 });
        assert_eq!(g[1].weight, 2);
        assert!(p.reconstructs(&g).unwrap());
    }

    #[test]
    fn trivial_filtration() {
        let p = presentation(vec![vec![one()], vec![one()], vec![one()]]);
        assert_eq!(p.compute_rank().unwrap(), vec![0, 0]);
    }

    #[test]
    fn standard_presentation_recovers_rank() {
        let p = FiltrationPresentation::standard(&[2, 1, 1]);
        assert_eq!(p.compute_rank().unwrap(), vec![2, 1, 1]);
    }

    #[test]
    fn errors() {
        assert_eq!(presentation(vec![vec![z(0)]]).compute_rank(), Err(GradedError::NotConnected));
        assert_eq!(
            presentation(vec![vec![one()], vec![one(), z(0)], vec![one()]]).compute_rank(),
            Err(GradedError::NotNested(1))
        );
        let mut p = presentation(vec![vec![one()], vec![one(), z(0)], vec![one(), z(0), z(1)], vec![one(), z(0), z(1)]]);
        p.bound = 2;
        assert!(matches!(p.compute_rank(), Err(GradedError::DegreeBoundExceeded { .. })));
    }
}
