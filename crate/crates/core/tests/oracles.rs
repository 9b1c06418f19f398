//! Independent reference values: exact rational Stieltjes recursions on the
//! moment sequences, closed forms for low degrees and a dense monomial solve.

use almost_ortho_core::almost::{self, tau_table};
use almost_ortho_core::poly::zeros_orthogonal;
use almost_ortho_core::quasi::{quasi_direct, quasi_profile};
use almost_ortho_core::{Family, MomentFunctional, Perturbation, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Moments normalized by the mass, so every family has rational moments.
fn normalized_moments(family: Family, count: usize) -> Vec<Q> {
    (0..count)
        .map(|j| match family {
            Family::Legendre => {
                if j % 2 == 1 {
                    Q::zero()
                } else {
                    q(1, j as i64 + 1)
                }
            }
            Family::Laguerre => Q::from_integer((1..=j).map(BigInt::from).product()),
            Family::Hermite => {
                if j % 2 == 1 {
                    Q::zero()
                } else {
                    // (j-1)!! / 2^{j/2}
                    let m = j / 2;
                    let mut v = Q::one();
                    for k in 0..m {
                        v *= q(2 * k as i64 + 1, 2);
                    }
                    v
                }
            }
            Family::ChebyshevFirstKind => {
                if j % 2 == 1 {
                    Q::zero()
                } else {
                    // binom(j, j/2) / 2^j
                    let m = j / 2;
                    let mut v = Q::one();
                    for k in 0..m {
                        v *= q((j - k) as i64, (k + 1) as i64);
                    }
                    v / Q::from_integer(BigInt::from(2).pow(j as u32))
                }
            }
        })
        .collect()
}

fn exact_mass(family: Family) -> f64 {
    match family {
        Family::Legendre => 2.0,
        Family::Laguerre => 1.0,
        Family::Hermite => std::f64::consts::PI.sqrt(),
        Family::ChebyshevFirstKind => std::f64::consts::PI,
    }
}

fn functional(p: &[Q], m: &[Q]) -> Q {
    p.iter().zip(m).fold(Q::zero(), |acc, (c, v)| acc + c * v)
}

fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact `(alpha_k, beta_k)` for `k < count` from the moments, with
/// `beta_0 = 1` (normalized mass).
fn stieltjes(moments: &[Q], count: usize) -> (Vec<Q>, Vec<Q>) {
    let x = vec![Q::zero(), Q::one()];
    let mut prev: Vec<Q> = vec![Q::zero()];
    let mut cur: Vec<Q> = vec![Q::one()];
    let mut prev_norm = Q::one();
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for k in 0..count {
        let norm = functional(&mul(&cur, &cur), moments);
        let a = functional(&mul(&mul(&x, &cur), &cur), moments) / &norm;
        let b = if k == 0 { Q::one() } else { &norm / &prev_norm };
        let mut next = mul(&x, &cur);
        for (i, c) in cur.iter().enumerate() {
            next[i] -= &a * c;
        }
        for (i, c) in prev.iter().enumerate() {
            if k > 0 {
                next[i] -= &b * c;
            }
        }
        alpha.push(a);
        beta.push(b);
        prev = std::mem::replace(&mut cur, next);
        prev_norm = norm;
    }
    (alpha, beta)
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(1.0)
}

#[test]
fn recurrence_matches_rational_stieltjes() {
    const COUNT: usize = 12;
    for family in Family::ALL {
        let moments = normalized_moments(family, 2 * COUNT + 2);
        let (alpha, beta) = stieltjes(&moments, COUNT);
        let coeffs = family.recurrence(COUNT).unwrap();
        for k in 0..COUNT {
            let a = alpha[k].to_f64().unwrap();
            assert!(
                close(coeffs.alpha()[k], a, 1e-14),
                "{family} alpha_{k}: {} vs {a}",
                coeffs.alpha()[k]
            );
            if k > 0 {
                let b = beta[k].to_f64().unwrap();
                assert!(
                    close(coeffs.beta()[k], b, 1e-14),
                    "{family} beta_{k}: {} vs {b}",
                    coeffs.beta()[k]
                );
            }
        }
        assert!(close(coeffs.mass(), exact_mass(family), 1e-15));
        assert!(close(coeffs.beta()[0], exact_mass(family), 1e-15));
    }
}

#[test]
fn quadrature_moments_match_rational_moments() {
    for family in Family::ALL {
        let f = MomentFunctional::new(family, 12).unwrap();
        let moments = normalized_moments(family, 22);
        for j in 0..=20 {
            let want = moments[j].to_f64().unwrap() * exact_mass(family);
            // Vanishing odd moments are measured against their even neighbour.
            let scale = want
                .abs()
                .max(moments[j + 1].to_f64().unwrap() * exact_mass(family))
                .max(1.0);
            let got = f.moment(j).unwrap();
            assert!(
                (got - want).abs() <= 1e-11 * scale,
                "{family} moment {j}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn laguerre_second_degree_norm() {
    // Monic L_2 is x^2 - 4x + 2, with squared norm (2!)^2.
    let f = MomentFunctional::new(Family::Laguerre, 4).unwrap();
    let p2 = f.coeffs().monic(2).unwrap();
    assert_eq!(p2.coeffs(), &[2.0, -4.0, 1.0]);
    assert!((f.inner_product(&p2, &p2).unwrap() - 4.0).abs() < 1e-13);
    assert!((f.coeffs().norm_factor(2).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn tau_matches_christoffel_darboux() {
    // R_k = P~_n / (x - x_k) expands as sum_j P~_j(x_k) P~_j / (sqrt(beta_n) P~_{n-1}(x_k)).
    for family in Family::ALL {
        let f = MomentFunctional::new(family, 14).unwrap();
        for n in 1..=10 {
            let table = tau_table(&f, n).unwrap();
            let zeros = zeros_orthogonal(f.coeffs(), n).unwrap();
            let sb = f.coeffs().beta()[n].sqrt();
            for (k, x) in zeros.zeros().iter().enumerate() {
                let v = f.coeffs().orthonormal_values(*x, n).unwrap();
                for i in 0..n {
                    let want = v[i] / (sb * v[n - 1]);
                    let got = table.get(i, k);
                    assert!(
                        (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                        "{family} n={n} tau[{i}][{k}] = {got}, closed form {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn legendre_degree_two_profile_closed_form() {
    let f = MomentFunctional::new(Family::Legendre, 6).unwrap();
    let zeros = zeros_orthogonal(f.coeffs(), 2).unwrap();
    let x2 = 1.0 / 3f64.sqrt();
    let (s1, s2) = ((1.5f64).sqrt(), (45.0f64 / 8.0).sqrt());
    for delta in [1e-2, -3e-3, 5e-4] {
        let pert = Perturbation::new(2, vec![delta], 2.0 * delta.abs()).unwrap();
        let qn = almost::build_qn(f.coeffs(), &zeros, &pert).unwrap();
        let profile = almost::almost_profile(&f, &qn, 2).unwrap();
        let f0 = delta * s2 * 2f64.sqrt() * x2;
        let f1 = -delta * s2 * s1 * 2.0 / 3.0;
        assert!((profile.f[0] - f0).abs() < 1e-15, "{} vs {f0}", profile.f[0]);
        assert!((profile.f[1] - f1).abs() < 1e-15, "{} vs {f1}", profile.f[1]);
    }
}

/// Independent construction of the Legendre quasi polynomial through a dense
/// solve in the monomial basis with exact moments `2 / (m + 1)`.
fn brute_force_legendre(n: usize, gammas: &[f64]) -> Polynomial {
    let s = gammas.len();
    let t = n - s;
    let moment = |m: usize| if m % 2 == 1 { 0.0 } else { 2.0 / (m as f64 + 1.0) };
    let fixed = Polynomial::from_roots(1.0, gammas);
    let lin = |j: usize, i: usize| -> f64 {
        // L[x^j * fixed * x^i]
        fixed
            .coeffs()
            .iter()
            .enumerate()
            .map(|(c, v)| v * moment(j + i + c))
            .sum()
    };
    // Unknowns v_0..v_{t-1} of the monic tail V = x^t + sum v_i x^i.
    let mut a = vec![vec![0.0; t + 1]; t];
    for (j, row) in a.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate().take(t) {
            *cell = lin(j, i);
        }
        row[t] = -lin(j, t);
    }
    for col in 0..t {
        let piv = (col..t)
            .max_by(|x, y| a[*x][col].abs().total_cmp(&a[*y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let m = row[col] / pivot[col];
                for (v, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *v -= m * p;
                }
            }
        }
    }
    let mut tail: Vec<f64> = (0..t).map(|i| a[i][t] / a[i][i]).collect();
    tail.push(1.0);
    let sigma = Family::Legendre.recurrence(n).unwrap().norm_factor(n).unwrap();
    (&fixed * &Polynomial::new(tail)).scale(sigma)
}

#[test]
fn quasi_direct_matches_dense_monomial_solve() {
    let f = MomentFunctional::new(Family::Legendre, 8).unwrap();
    let zeros = zeros_orthogonal(f.coeffs(), 4).unwrap();
    let gammas = [zeros.zeros()[0] + 1e-3, zeros.zeros()[1] - 1e-3];
    let q = quasi_direct(&f, &gammas, 4).unwrap();
    let reference = brute_force_legendre(4, &gammas);
    assert!(
        q.full.max_coeff_diff(&reference) < 1e-12,
        "{:?} vs {:?}",
        q.full,
        reference
    );

    let g = quasi_profile(&f, &q).unwrap();
    assert!(g[0].abs() <= 1e-10 && g[1].abs() <= 1e-10);
    for j in [2, 3] {
        assert!(g[j].abs() > 1e-5 && g[j].abs() < 1e-1, "g_{j} = {}", g[j]);
    }
    assert!((g[4] - 1.0).abs() <= 1e-10);
}
