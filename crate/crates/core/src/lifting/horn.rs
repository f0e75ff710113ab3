use crate::simplicial::standard::subset_id;
use crate::simplicial::{opposite_map, SMap, Simplex, SimplicialSet};

use super::{LiftError, LiftingProblem};

/// `Λ^n_i → X` given by its faces (`None` at `i`), over `base ∈ Y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornProblem {
    pub n: usize,
    pub i: usize,
    pub faces: Vec<Option<Simplex>>,
    pub base: Simplex,
}

impl HornProblem {
    pub fn to_problem(&self, p: &SMap, opposite: bool) -> LiftingProblem {
        let (x, y) = (p.source(), p.target());
        LiftingProblem {
            n: self.n,
            i: self.i,
            base: y.to_ref(self.base),
            faces: self.faces.iter().enumerate().filter_map(|(j, f)| f.map(|f| (j, x.to_ref(f)))).collect(),
            opposite,
        }
    }

    /// Checks degrees, the horn compatibilities and `p(d_j) = d_j base`.
    pub fn check(&self, p: &SMap) -> Result<(), LiftError> {
        let (x, y) = (p.source(), p.target());
        let n = self.n;
        if n < 1 || self.i > n || self.faces.len() != n + 1 || self.base.degree() != n {
            return Err(LiftError::Precondition(format!("malformed ({n},{})-horn problem", self.i)));
        }
        for (j, f) in self.faces.iter().enumerate() {
            match f {
                None if j != self.i => return Err(LiftError::Precondition(format!("face d{j} is missing"))),
                Some(_) if j == self.i => return Err(LiftError::Precondition(format!("face d{j} must be absent"))),
                Some(s) if s.degree() != n - 1 => {
                    return Err(LiftError::Precondition(format!("face d{j} has degree {}", s.degree())))
                }
                Some(s) if p.apply(*s) != y.face(self.base, j) => {
                    return Err(LiftError::Precondition(format!(
                        "face d{j} = {} lies over {}, not over d{j} of the base {}",
                        x.describe(*s),
                        y.describe(p.apply(*s)),
                        y.describe(self.base)
                    )))
                }
                _ => {}
            }
        }
        if n >= 2 {
            for k in 0..=n {
                for j in 0..k {
                    if let (Some(yj), Some(yk)) = (self.faces[j], self.faces[k]) {
                        if x.face(yk, j) != x.face(yj, k - 1) {
                            return Err(LiftError::Precondition(format!("faces d{j} and d{k} do not agree")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn matches(&self, x: &SimplicialSet, p: &SMap, s: Simplex) -> bool {
        p.apply(s) == self.base
            && self.faces.iter().enumerate().all(|(j, f)| f.is_none_or(|f| x.face(s, j) == f))
    }
}

/// The least n-simplex of X (canonical order: word length, word, cell id)
/// solving the problem, if any.
pub fn solve_horn_problem(p: &SMap, problem: &HornProblem) -> Result<Option<Simplex>, LiftError> {
    problem.check(p)?;
    let x = p.source();
    Ok(x.simplices(problem.n).into_iter().find(|&s| problem.matches(x, p, s)))
}

/// Number of solutions.
pub fn horn_fillers(p: &SMap, problem: &HornProblem) -> Result<usize, LiftError> {
    problem.check(p)?;
    let x = p.source();
    Ok(x.simplices(problem.n).into_iter().filter(|&s| problem.matches(x, p, s)).count())
}

/// Solves the square formed by `horn: Λ^n_i → X` and `sigma: Δ^n → Y`,
/// where the horn's source is `horn(n, i)` with its standard identifiers.
pub fn solve_horn_lift(p: &SMap, horn: &SMap, sigma: &SMap) -> Result<Option<Simplex>, LiftError> {
    let n = sigma.source().dimension().ok_or_else(|| LiftError::Precondition("base simplex is empty".into()))?;
    let hs = horn.source();
    let all: Vec<usize> = (0..=n).collect();
    let face_id = |j: usize| {
        let mut v = all.clone();
        v.remove(j);
        subset_id(&v)
    };
    let missing: Vec<usize> = (0..=n).filter(|&j| hs.find(n - 1, &face_id(j)).is_none()).collect();
    let i = match missing.as_slice() {
        [i] => *i,
        _ => return Err(LiftError::Precondition("source of the horn map is not a horn".into())),
    };
    let base = sigma.cell_image(n, 0);
    let y = p.target();
    // p∘λ must agree with σ on every cell of the horn
    for s in hs.nondegenerate() {
        let vs: Vec<usize> =
            hs.cell_id(s.cell_dim(), s.cell_index()).split(',').map(|v| v.parse().expect("Δ^n identifier")).collect();
        if p.apply(horn.apply(s)) != y.apply(base, &vs) {
            return Err(LiftError::Precondition(format!(
                "p∘λ and σ disagree on the face {}",
                hs.cell_id(s.cell_dim(), s.cell_index())
            )));
        }
    }
    let faces = (0..=n)
        .map(|j| if j == i { None } else { Some(horn.cell_image(n - 1, hs.find(n - 1, &face_id(j)).unwrap())) })
        .collect();
    solve_horn_problem(p, &HornProblem { n, i, faces, base })
}

/// Re-runs a recorded problem; `Ok(true)` when it has a lift.
pub fn recheck(p: &SMap, problem: &LiftingProblem) -> Result<bool, LiftError> {
    let op;
    let map = if problem.opposite {
        op = opposite_map(p);
        &op
    } else {
        p
    };
    let (x, y) = (map.source(), map.target());
    let mut faces = vec![None; problem.n + 1];
    for (j, r) in &problem.faces {
        faces[*j] = Some(x.resolve(r)?);
    }
    let hp = HornProblem { n: problem.n, i: problem.i, faces, base: y.resolve(&problem.base)? };
    Ok(solve_horn_problem(map, &hp)?.is_some())
}
