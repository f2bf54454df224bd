//! Small Lie algebras (twist = identity) used as raw material.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{random_invertible, random_scalar};
use crate::exalg::{FieldSpec, Matrix, Scalar};
use crate::homlie::HomLieAlgebra;

/// `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`.
type BracketEntry = (usize, usize, Vec<(usize, Scalar)>);

fn from_brackets(f: FieldSpec, n: usize, entries: &[BracketEntry]) -> HomLieAlgebra {
    let mut table = vec![f.zeros(n); n * n];
    for (i, j, terms) in entries {
        let mut v = f.zeros(n);
        for (k, c) in terms {
            v[*k] = &v[*k] + c;
        }
        table[j * n + i] = v.iter().map(|s| -s).collect();
        table[i * n + j] = v;
    }
    HomLieAlgebra::from_table(f, n, table, Matrix::identity(f, n))
}

/// A named Lie algebra: `abelian<k>`, `r2`, `heisenberg`, `sl2`, `r3`, `filiform4`.
/// `lambda` parametrizes `r3` (`[x,y] = y`, `[x,z] = λz`).
pub fn base_lie_algebra(name: &str, f: FieldSpec, lambda: Option<Scalar>) -> Option<HomLieAlgebra> {
    let one = f.one();
    let two = f.from_i64(2);
    Some(match name {
        "r2" => from_brackets(f, 2, &[(0, 1, vec![(1, one)])]),
        "heisenberg" => from_brackets(f, 3, &[(0, 1, vec![(2, one)])]),
        // basis (e, f, h)
        "sl2" => from_brackets(
            f,
            3,
            &[
                (0, 1, vec![(2, one.clone())]),
                (2, 0, vec![(0, two.clone())]),
                (2, 1, vec![(1, -&two)]),
            ],
        ),
        "r3" => from_brackets(
            f,
            3,
            &[
                (0, 1, vec![(1, one)]),
                (0, 2, vec![(2, lambda.unwrap_or_else(|| f.one()))]),
            ],
        ),
        "filiform4" => from_brackets(
            f,
            4,
            &[(0, 1, vec![(2, one.clone())]), (0, 2, vec![(3, one)])],
        ),
        _ => {
            let k: usize = name.strip_prefix("abelian")?.parse().ok()?;
            from_brackets(f, k, &[])
        }
    })
}

fn direct_sum(a: &HomLieAlgebra, b: &HomLieAlgebra) -> HomLieAlgebra {
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let t = n + m;
    let mut table = vec![f.zeros(t); t * t];
    for i in 0..n {
        for j in 0..n {
            let mut v = f.zeros(t);
            v[..n].clone_from_slice(a.structure(i, j));
            table[i * t + j] = v;
        }
    }
    for i in 0..m {
        for j in 0..m {
            let mut v = f.zeros(t);
            v[n..].clone_from_slice(b.structure(i, j));
            table[(n + i) * t + n + j] = v;
        }
    }
    HomLieAlgebra::from_table(f, t, table, Matrix::identity(f, t))
}

/// A Lie algebra of dimension `n`: a direct sum of named pieces padded with
/// an abelian summand, in a random basis half of the time.
pub(crate) fn sample_lie(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> HomLieAlgebra {
    const PIECES: [(&str, usize); 5] = [
        ("r2", 2),
        ("heisenberg", 3),
        ("sl2", 3),
        ("r3", 3),
        ("filiform4", 4),
    ];
    let mut acc: Option<HomLieAlgebra> = None;
    let mut left = n;
    while left > 0 {
        let fitting: Vec<_> = PIECES.iter().filter(|(_, d)| *d <= left).collect();
        if fitting.is_empty() || rng.gen_bool(0.25) {
            break;
        }
        let (name, d) = fitting[rng.gen_range(0..fitting.len())];
        let lambda = random_scalar(f, rng);
        let piece = base_lie_algebra(name, f, Some(lambda)).expect("known piece");
        acc = Some(match acc {
            None => piece,
            Some(a) => direct_sum(&a, &piece),
        });
        left -= d;
    }
    if left > 0 {
        let pad = base_lie_algebra(&format!("abelian{left}"), f, None).expect("abelian");
        acc = Some(match acc {
            None => pad,
            Some(a) => direct_sum(&a, &pad),
        });
    }
    let l = acc.expect("n > 0");
    if rng.gen_bool(0.5) {
        let p = random_invertible(f, n, rng);
        l.change_basis(&p).expect("invertible")
    } else {
        l
    }
}

/// Basis of the centroid `{γ : γ[x, y] = [γx, y]}` as `n × n` matrices.
pub fn centroid(l: &HomLieAlgebra) -> Vec<Matrix> {
    let f = l.field();
    let n = l.dim();
    let idx = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let b = l.structure(i, j);
            let right = l.right_mult(&l.unit(j));
            for out in 0..n {
                let mut row = f.zeros(n * n);
                for (c, bc) in b.iter().enumerate() {
                    row[idx(out, c)] = &row[idx(out, c)] + bc;
                }
                for r in 0..n {
                    let rv = right.get(out, r);
                    row[idx(r, i)] = &row[idx(r, i)] - rv;
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        crate::exalg::Subspace::full(f, n * n)
    } else {
        Matrix::from_rows_with_cols(f, n * n, rows)
            .expect("shape")
            .kernel()
    };
    kernel
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(f, n, n, v.clone()))
        .collect()
}
