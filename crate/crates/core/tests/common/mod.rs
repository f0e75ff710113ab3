#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use fibcheck::category::{FiniteCategory, Functor};
use fibcheck::simplicial::{SMap, Simplex, SimplicialSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Strict order relation of a random poset on `p0..p{n-1}`: `i < j` only
/// when `i < j` as integers, then transitively closed.
pub fn random_order(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Vec<bool>> {
    let mut lt = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            lt[i][j] = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    lt
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn poset(names: &[String], lt: &[Vec<bool>]) -> FiniteCategory {
    let elements: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut relations = Vec::new();
    for (i, row) in lt.iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            if b {
                relations.push((elements[i], elements[j]));
            }
        }
    }
    FiniteCategory::from_poset(&elements, &relations).unwrap()
}

fn arrow(a: &str, b: &str) -> String {
    if a == b {
        format!("id_{a}")
    } else {
        format!("{a}<{b}")
    }
}

/// A functor between posets built with `from_poset`, given on objects.
pub fn monotone(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, on_objects: &HashMap<String, String>) -> Functor {
    let mut morphisms = HashMap::new();
    for m in source.morphisms() {
        let (a, b) = (source.object_id(m.src), source.object_id(m.tgt));
        morphisms.insert(arrow(a, b), arrow(&on_objects[a], &on_objects[b]));
    }
    Functor::from_ids(source, target, on_objects, &morphisms).unwrap()
}

/// Identity, constant, down-set and up-set inclusions, a monotone map onto a
/// chain and the projection `P × [1] → P`.
pub fn functor_sample(rng: &mut ChaCha8Rng, n: usize, lt: &[Vec<bool>]) -> Vec<(String, Functor)> {
    let pn = names("p", n);
    let p = Arc::new(poset(&pn, lt));
    let mut out = vec![("identity".to_string(), Functor::identity(p.clone()))];

    let point = Arc::new(poset(&names("q", 1), &[vec![false]]));
    let to_point = pn.iter().map(|e| (e.clone(), "q0".to_string())).collect();
    out.push(("constant".into(), monotone(p.clone(), point, &to_point)));

    let generators: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let down: Vec<usize> = (0..n).filter(|&i| generators.iter().any(|&g| i == g || lt[i][g])).collect();
    if !down.is_empty() {
        let dn: Vec<String> = down.iter().map(|&i| pn[i].clone()).collect();
        let dlt: Vec<Vec<bool>> = down.iter().map(|&i| down.iter().map(|&j| lt[i][j]).collect()).collect();
        let d = Arc::new(poset(&dn, &dlt));
        let incl = dn.iter().map(|e| (e.clone(), e.clone())).collect();
        out.push(("down-set inclusion".into(), monotone(d, p.clone(), &incl)));
    }

    let generators: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let up: Vec<usize> = (0..n).filter(|&i| generators.iter().any(|&g| i == g || lt[g][i])).collect();
    if !up.is_empty() {
        let un: Vec<String> = up.iter().map(|&i| pn[i].clone()).collect();
        let ult: Vec<Vec<bool>> = up.iter().map(|&i| up.iter().map(|&j| lt[i][j]).collect()).collect();
        let u = Arc::new(poset(&un, &ult));
        let incl = un.iter().map(|e| (e.clone(), e.clone())).collect();
        out.push(("up-set inclusion".into(), monotone(u, p.clone(), &incl)));
    }

    let m = rng.gen_range(2..=4);
    let chain: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| i < j).collect()).collect();
    let q = Arc::new(poset(&names("c", m), &chain));
    let mut values = vec![0usize; n];
    for i in 0..n {
        let floor = (0..i).filter(|&j| lt[j][i]).map(|j| values[j]).max().unwrap_or(0);
        values[i] = rng.gen_range(floor..m);
    }
    let to_chain = (0..n).map(|i| (pn[i].clone(), format!("c{}", values[i]))).collect();
    out.push(("monotone onto a chain".into(), monotone(p.clone(), q, &to_chain)));

    if n <= 5 {
        let mut pairs = Vec::new();
        for i in 0..n {
            for k in 0..2 {
                pairs.push((i, k, format!("p{i}x{k}")));
            }
        }
        let plt: Vec<Vec<bool>> = pairs
            .iter()
            .map(|&(i, k, _)| {
                pairs.iter().map(|&(j, l, _)| (i, k) != (j, l) && (i == j || lt[i][j]) && k <= l).collect()
            })
            .collect();
        let pnames: Vec<String> = pairs.iter().map(|t| t.2.clone()).collect();
        let prod = Arc::new(poset(&pnames, &plt));
        let proj = pairs.iter().map(|(i, _, s)| (s.clone(), pn[*i].clone())).collect();
        out.push(("projection".into(), monotone(prod, p, &proj)));
    }
    out
}

pub fn vertices_of(x: &SimplicialSet, s: Simplex) -> Vec<Simplex> {
    (0..=s.degree()).map(|k| x.vertex(s, k)).collect()
}

/// Simplices of X in degrees `..=top` keyed by their vertex sequence. Only
/// meaningful when simplices are determined by their vertices, as in nerves
/// of posets.
pub struct VertexIndex(Vec<HashMap<Vec<Simplex>, Simplex>>);

impl VertexIndex {
    pub fn new(x: &SimplicialSet, top: usize) -> Self {
        VertexIndex(
            (0..=top)
                .map(|n| {
                    let mut m = HashMap::new();
                    for s in x.simplices(n) {
                        assert!(m.insert(vertices_of(x, s), s).is_none(), "two simplices share vertices");
                    }
                    m
                })
                .collect(),
        )
    }

    pub fn get(&self, vertices: &[Simplex]) -> Option<Simplex> {
        self.0[vertices.len() - 1].get(vertices).copied()
    }
}

/// Every map `Λ^n_i → X` over `base`, as face lists with `None` at `i`,
/// found by brute force over vertex tuples.
pub fn horns_over(p: &SMap, index: &VertexIndex, n: usize, i: usize, base: Simplex) -> Vec<(Vec<Simplex>, Vec<Option<Simplex>>)> {
    let x = p.source();
    let y = p.target();
    let choices: Vec<Vec<Simplex>> = vertices_of(y, base)
        .iter()
        .map(|&bv| x.simplices(0).into_iter().filter(|&v| p.apply(v) == bv).collect())
        .collect();
    let mut out = Vec::new();
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    let mut tuple = vec![0usize; n + 1];
    'outer: loop {
        let vs: Vec<Simplex> = (0..=n).map(|k| choices[k][tuple[k]]).collect();
        let faces: Option<Vec<Option<Simplex>>> = (0..=n)
            .map(|j| {
                if j == i {
                    return Some(None);
                }
                let sub: Vec<Simplex> = (0..=n).filter(|&k| k != j).map(|k| vs[k]).collect();
                index.get(&sub).filter(|&f| p.apply(f) == y.face(base, j)).map(Some)
            })
            .collect();
        if let Some(faces) = faces {
            out.push((vs, faces));
        }
        for k in 0..=n {
            tuple[k] += 1;
            if tuple[k] < choices[k].len() {
                continue 'outer;
            }
            tuple[k] = 0;
        }
        break;
    }
    out
}

/// Cartesian lifts for a monotone map of posets, straight from the
/// definition: for `e ≤ f(x)` some `w ≤ x` with `f(w) = e` such that every
/// `z ≤ x` with `f(z) ≤ e` lies below `w`.
pub fn poset_fibration(f: &[usize], le_source: &[Vec<bool>], le_target: &[Vec<bool>]) -> bool {
    let n = f.len();
    (0..n).all(|x| {
        (0..le_target.len()).filter(|&e| le_target[e][f[x]]).all(|e| {
            (0..n).any(|w| {
                le_source[w][x] && f[w] == e && (0..n).all(|z| !(le_source[z][x] && le_target[f[z]][e]) || le_source[z][w])
            })
        })
    })
}

pub fn reflexive(lt: &[Vec<bool>]) -> Vec<Vec<bool>> {
    lt.iter().enumerate().map(|(i, r)| r.iter().enumerate().map(|(j, &b)| b || i == j).collect()).collect()
}

pub fn transpose(le: &[Vec<bool>]) -> Vec<Vec<bool>> {
    (0..le.len()).map(|i| (0..le.len()).map(|j| le[j][i]).collect()).collect()
}

/// Rank over the rationals by fraction-free elimination on i128.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let (f, g) = (a[i][c], a[rank][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * g - a[rank][j] * f;
                }
                let gcd = a[i].iter().fold(0i128, |acc, &v| gcd_i(acc, v));
                if gcd > 1 {
                    a[i].iter_mut().for_each(|v| *v /= gcd);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd_i(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i(b, a % b)
    }
}

/// Rank over F_p.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| v.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|&x| (x * a[rank][c]) % p == 1).unwrap();
        for j in 0..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of an ordered simplicial complex given as all of its faces
/// (vertex lists in a fixed order), and whether ranks over Q agree with
/// ranks mod small primes.
pub fn complex_betti(faces: &[Vec<usize>]) -> (Vec<usize>, bool) {
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    let by_degree: Vec<Vec<&Vec<usize>>> = (1..=top).map(|k| faces.iter().filter(|f| f.len() == k).collect()).collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        by_degree.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
    let mut torsion_free = true;
    let rank_of = |k: usize, torsion_free: &mut bool| -> usize {
        if k == 0 || k >= by_degree.len() {
            return 0;
        }
        let mut rows = vec![vec![0i64; by_degree[k].len()]; by_degree[k - 1].len()];
        for (c, f) in by_degree[k].iter().enumerate() {
            for i in 0..f.len() {
                let mut g = (*f).clone();
                g.remove(i);
                rows[index[k - 1][&g]][c] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        let r = rank_q(&rows);
        for p in [2, 3, 5, 7] {
            *torsion_free &= rank_mod(&rows, p) == r;
        }
        r
    };
    let ranks: Vec<usize> = (0..=by_degree.len()).map(|k| rank_of(k, &mut torsion_free)).collect();
    let betti = (0..by_degree.len()).map(|k| by_degree[k].len() - ranks[k] - ranks[k + 1]).collect();
    (betti, torsion_free)
}

/// Faces of the order complex of a poset: all nonempty chains.
pub fn chains(lt: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = lt.len();
    let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let last = *c.last().unwrap();
            for j in 0..n {
                if lt[last][j] {
                    let mut d = c.clone();
                    d.push(j);
                    next.push(d);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All subsets of `0..=n` of size `1..=k` in increasing order.
pub fn simplex_faces(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << (n + 1)))
        .filter(|m| m.count_ones() as usize <= max_size)
        .map(|m| (0..=n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}
