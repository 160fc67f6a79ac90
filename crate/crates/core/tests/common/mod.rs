//! Random faithful triangular algebras built from matrix subalgebras.

use fident_core::linalg::{rat, Matrix, Rational};
use fident_core::sample::Sampler;
use fident_core::triangular::{matrix_triangular, TriangularAlgebra};

fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    m[(i, j)] = rat(1);
    m
}

/// Unital subalgebras of `M_p(Q)`, given by spanning matrices.
fn subalgebras(p: usize) -> Vec<Vec<Matrix>> {
    let id = Matrix::identity(p);
    let mut out = vec![vec![id.clone()]];
    if p >= 2 {
        out.push((0..p).map(|i| unit(p, p, i, i)).collect());
        out.push(vec![id.clone(), unit(p, p, 0, p - 1)]);
    }
    if p == 2 {
        out.push(vec![unit(2, 2, 0, 0), unit(2, 2, 0, 1), unit(2, 2, 1, 1)]);
        out.push((0..4).map(|k| unit(2, 2, k / 2, k % 2)).collect());
    }
    if p == 3 {
        out.push(vec![id, unit(3, 3, 0, 1), unit(3, 3, 0, 2)]);
    }
    out
}

/// Replaces a basis by random invertible combinations of it.
fn recombine(basis: &[Matrix], sampler: &mut Sampler) -> Vec<Matrix> {
    let k = basis.len();
    loop {
        let coeffs: Vec<Vec<Rational>> = (0..k).map(|_| sampler.vector(k)).collect();
        if Matrix::from_rows(k, coeffs.clone()).unwrap().rank() < k {
            continue;
        }
        return coeffs
            .iter()
            .map(|row| {
                let mut m = Matrix::zeros(basis[0].rows(), basis[0].cols());
                for (c, b) in row.iter().zip(basis) {
                    m = m.add(&b.scale(c)).unwrap();
                }
                m
            })
            .collect();
    }
}

pub fn random_triangular(sampler: &mut Sampler) -> fident_core::Result<TriangularAlgebra> {
    const SIZES: [(usize, usize); 6] = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];
    let (p, q) = SIZES[sampler.index(SIZES.len())];
    let pick = |sampler: &mut Sampler, r: usize| {
        let options: Vec<Vec<Matrix>> = subalgebras(r).into_iter().filter(|b| b.len() <= 4).collect();
        options[sampler.index(options.len())].clone()
    };
    let a = pick(sampler, p);
    let b = pick(sampler, q);
    let m: Vec<Matrix> = (0..p * q).map(|k| unit(p, q, k / q, k % q)).collect();
    matrix_triangular(&recombine(&a, sampler), &recombine(&m, sampler), &recombine(&b, sampler))
}

