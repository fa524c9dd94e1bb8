//! The classical (`q = 1`) tensor dictionaries: packing the ten Weyl-tensor
//! components into the two conjugate quartic polynomials `C+(z)`, `C-(zb)`,
//! the nine-component primed form of a symmetric traceless rank-two tensor,
//! and the light-cone change of variables.

use serde::Serialize;

use crate::scalar::GaussRat;

/// The ten independent Weyl-tensor components `C_0 .. C_9`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct WeylComponents(pub [GaussRat; 10]);

/// Side tag plus the five coefficients of the quartic polynomial
/// `C(z) = z^4 C_4 + z^3 C_3 + z^2 C_2 + z C_1 + C_0` (or the `zb` mirror).
#[derive(Clone, PartialEq, Debug)]
pub struct CPolynomial {
    pub side: super::Side,
    /// Coefficients indexed by z-power 0..4.
    pub coeffs: [GaussRat; 5],
}

/// The printed linear map from Weyl components to the two conjugate
/// quartics. Implemented exactly as printed, including the asymmetric
/// `C+_3` (factor 8) versus `C-_3` (factor 2); see [`cpm_rank_report`].
pub fn weyl_to_cpm(w: &WeylComponents) -> (CPolynomial, CPolynomial) {
    let c = &w.0;
    let i = GaussRat::i();
    let half = GaussRat::from_ratio(1, 2);
    let two = GaussRat::from_int(2);
    let three = GaussRat::from_int(3);
    let eight = GaussRat::from_int(8);

    // common building blocks
    let c2_mhalf_c1 = &c[2] - &(&half * &c[1]);
    let c0_half_c3 = &c[0] + &(&half * &c[3]);

    let plus = [
        // C+_0 = C2 - 1/2 C1 - C6 + i(C0 + 1/2 C3 + C7)
        &(&c2_mhalf_c1 - &c[6]) + &(&i * &(&c0_half_c3 + &c[7])),
        // C+_1 = 2(C4 - C8 + i(C9 - C5))
        &two * &(&(&c[4] - &c[8]) + &(&i * &(&c[9] - &c[5]))),
        // C+_2 = 3(C1 - i C3)
        &three * &(&c[1] - &(&i * &c[3])),
        // C+_3 = 8(C4 + C8 + i(C9 + C5))
        &eight * &(&(&c[4] + &c[8]) + &(&i * &(&c[9] + &c[5]))),
        // C+_4 = C2 - 1/2 C1 + C6 + i(C0 + 1/2 C3 - C7)
        &(&c2_mhalf_c1 + &c[6]) + &(&i * &(&c0_half_c3 - &c[7])),
    ];
    let minus = [
        // C-_0 = C2 - 1/2 C1 - C6 - i(C0 + 1/2 C3 + C7)
        &(&c2_mhalf_c1 - &c[6]) - &(&i * &(&c0_half_c3 + &c[7])),
        // C-_1 = 2(C4 - C8 - i(C9 - C5))
        &two * &(&(&c[4] - &c[8]) - &(&i * &(&c[9] - &c[5]))),
        // C-_2 = 3(C1 + i C3)
        &three * &(&c[1] + &(&i * &c[3])),
        // C-_3 = 2(C4 + C8 - i(C9 + C5))
        &two * &(&(&c[4] + &c[8]) - &(&i * &(&c[9] + &c[5]))),
        // C-_4 = C2 - 1/2 C1 + C6 - i(C0 + 1/2 C3 - C7)
        &(&c2_mhalf_c1 + &c[6]) - &(&i * &(&c0_half_c3 - &c[7])),
    ];
    (
        CPolynomial {
            side: super::Side::Plus,
            coeffs: plus,
        },
        CPolynomial {
            side: super::Side::Minus,
            coeffs: minus,
        },
    )
}

/// Rank report for the combined 10 x 10 map `(C_0..C_9) -> (C+_k, C-_k)`.
#[derive(Clone, Debug, Serialize)]
pub struct CpmRankReport {
    pub rank: usize,
    pub full_rank: bool,
    /// The printed scale factors of the `z^3`/`zb^3` rows, surfaced because
    /// they break the conjugation symmetry of the rest of the table.
    pub c3_row_factors: (i64, i64),
}

/// Computes the exact rank of the printed map by Gaussian elimination over
/// the Gaussian rationals.
pub fn cpm_rank_report() -> CpmRankReport {
    // Build the matrix column by column from basis vectors.
    let mut matrix: Vec<[GaussRat; 10]> = vec![Default::default(); 10];
    for col in 0..10 {
        let mut w = WeylComponents::default();
        w.0[col] = GaussRat::one();
        let (p, m) = weyl_to_cpm(&w);
        for row in 0..5 {
            matrix[row][col] = p.coeffs[row].clone();
            matrix[row + 5][col] = m.coeffs[row].clone();
        }
    }
    let rank = gauss_rank(&mut matrix);
    CpmRankReport {
        rank,
        full_rank: rank == 10,
        c3_row_factors: (8, 2),
    }
}

fn gauss_rank(matrix: &mut [[GaussRat; 10]]) -> usize {
    let rows = matrix.len();
    let mut rank = 0;
    for col in 0..10 {
        let Some(pivot) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let inv = matrix[rank][col].inv();
        for c in 0..10 {
            matrix[rank][c] = &matrix[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !matrix[r][col].is_zero() {
                let f = matrix[r][col].clone();
                for c in 0..10 {
                    matrix[r][c] = &matrix[r][c] - &(&f * &matrix[rank][c]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A symmetric rank-two tensor `T_{mu nu}` over the Gaussian rationals
/// (also reused for the metric perturbation, which has the same shape).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct StressTensor {
    /// Entries `[T00, T01, T02, T03, T11, T12, T13, T22, T23, T33]`.
    pub entries: [GaussRat; 10],
}

impl StressTensor {
    pub fn get(&self, mu: usize, nu: usize) -> &GaussRat {
        let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
        let idx = match (a, b) {
            (0, 0) => 0,
            (0, 1) => 1,
            (0, 2) => 2,
            (0, 3) => 3,
            (1, 1) => 4,
            (1, 2) => 5,
            (1, 3) => 6,
            (2, 2) => 7,
            (2, 3) => 8,
            (3, 3) => 9,
            _ => panic!("index out of range"),
        };
        &self.entries[idx]
    }

    /// The flat-metric trace `eta^{mu nu} T_{mu nu} = T00 - T11 - T22 - T33`
    /// (signature `(+,-,-,-)` from the light-cone conventions).
    pub fn trace(&self) -> GaussRat {
        &(&(&self.entries[0] - &self.entries[4]) - &self.entries[7]) - &self.entries[9]
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }
}

/// The nine primed components, indexed by `(z-power, zb-power)` in `0..=2`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PrimedStress {
    grid: [[GaussRat; 3]; 3],
}

impl PrimedStress {
    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.grid[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.grid[i][j] = v;
    }
}

/// The printed nine-line dictionary from `T_{mu nu}` to the primed
/// components `T'_{ij}` of the indexless polynomial.
pub fn stress_to_primed(t: &StressTensor) -> PrimedStress {
    let i = GaussRat::i();
    let two = GaussRat::from_int(2);
    let g = |mu: usize, nu: usize| t.get(mu, nu).clone();
    let mut p = PrimedStress::default();
    // T'22 = T00 + 2 T03 + T33
    p.set(2, 2, &(&g(0, 0) + &(&two * &g(0, 3))) + &g(3, 3));
    // T'11 = T00 - T33
    p.set(1, 1, &g(0, 0) - &g(3, 3));
    // T'00 = T00 - 2 T03 + T33
    p.set(0, 0, &(&g(0, 0) - &(&two * &g(0, 3))) + &g(3, 3));
    // T'21 = T01 + i T02 + T13 + i T23
    p.set(
        2,
        1,
        &(&g(0, 1) + &(&i * &g(0, 2))) + &(&g(1, 3) + &(&i * &g(2, 3))),
    );
    // T'12 = T01 - i T02 + T13 - i T23
    p.set(
        1,
        2,
        &(&g(0, 1) - &(&i * &g(0, 2))) + &(&g(1, 3) - &(&i * &g(2, 3))),
    );
    // T'10 = T01 + i T02 - T13 - i T23
    p.set(
        1,
        0,
        &(&g(0, 1) + &(&i * &g(0, 2))) - &(&g(1, 3) + &(&i * &g(2, 3))),
    );
    // T'01 = T01 - i T02 - T13 + i T23
    p.set(
        0,
        1,
        &(&g(0, 1) - &(&i * &g(0, 2))) - &(&g(1, 3) - &(&i * &g(2, 3))),
    );
    // T'20 = T11 + 2i T12 - T22
    p.set(2, 0, &(&g(1, 1) + &(&(&two * &i) * &g(1, 2))) - &g(2, 2));
    // T'02 = T11 - 2i T12 - T22
    p.set(0, 2, &(&g(1, 1) - &(&(&two * &i) * &g(1, 2))) - &g(2, 2));
    p
}

/// Inverse of [`stress_to_primed`] on the traceless subspace: the nine
/// primed components determine all entries except `T11 + T22`, which the
/// trace condition `T00 = T11 + T22 + T33` supplies. Exact round trip:
/// `stress_to_primed(primed_to_stress(p)) == p` always, and
/// `primed_to_stress(stress_to_primed(t)) == t` for traceless `t`.
pub fn primed_to_stress(p: &PrimedStress) -> StressTensor {
    let quarter = GaussRat::from_ratio(1, 4);
    let half = GaussRat::from_ratio(1, 2);
    let mi = -&GaussRat::i(); // 1/i = -i

    let sum_2200 = &p.get(2, 2).clone() + p.get(0, 0);
    let t00 = &(&quarter * &sum_2200) + &(&half * p.get(1, 1));
    let t33 = &(&quarter * &sum_2200) - &(&half * p.get(1, 1));
    let t03 = &quarter * &(&p.get(2, 2).clone() - p.get(0, 0));

    let t01 = &quarter
        * &(&(&p.get(2, 1).clone() + p.get(1, 2)) + &(&p.get(1, 0).clone() + p.get(0, 1)));
    let t13 = &quarter
        * &(&(&p.get(2, 1).clone() + p.get(1, 2)) - &(&p.get(1, 0).clone() + p.get(0, 1)));
    let t02 = &(&quarter * &mi)
        * &(&(&p.get(2, 1).clone() - p.get(1, 2)) + &(&p.get(1, 0).clone() - p.get(0, 1)));
    let t23 = &(&quarter * &mi)
        * &(&(&p.get(2, 1).clone() - p.get(1, 2)) - &(&p.get(1, 0).clone() - p.get(0, 1)));

    let diff_1122 = &half * &(&p.get(2, 0).clone() + p.get(0, 2));
    let t12 = &(&quarter * &mi) * &(&p.get(2, 0).clone() - p.get(0, 2));
    // trace condition: T11 + T22 = T00 - T33 = T'11
    let t11 = &(&half * p.get(1, 1)) + &(&half * &diff_1122);
    let t22 = &(&half * p.get(1, 1)) - &(&half * &diff_1122);

    StressTensor {
        entries: [t00, t01, t02, t03, t11, t12, t13, t22, t23, t33],
    }
}

/// Light-cone variables from Minkowski components:
/// `x+- = x0 +- x3`, `v = x1 - i x2`, `vb = x1 + i x2`. The same map serves
/// momenta.
#[derive(Clone, PartialEq, Debug)]
pub struct LightCone {
    pub plus: GaussRat,
    pub minus: GaussRat,
    pub v: GaussRat,
    pub vbar: GaussRat,
}

pub fn lightcone_map(x: &[GaussRat; 4]) -> LightCone {
    let i = GaussRat::i();
    LightCone {
        plus: &x[0] + &x[3],
        minus: &x[0] - &x[3],
        v: &x[1] - &(&i * &x[2]),
        vbar: &x[1] + &(&i * &x[2]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gr(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    #[test]
    fn wcomp_examples() {
        // all zero -> zero polynomials
        let (p, m) = weyl_to_cpm(&WeylComponents::default());
        assert!(p.coeffs.iter().all(GaussRat::is_zero));
        assert!(m.coeffs.iter().all(GaussRat::is_zero));
        // C1 = 1: C+_0 = -1/2, C+_2 = 3, C+_4 = -1/2, mirrored on minus.
        let mut w = WeylComponents::default();
        w.0[1] = GaussRat::one();
        let (p, m) = weyl_to_cpm(&w);
        assert_eq!(p.coeffs[0], GaussRat::from_ratio(-1, 2));
        assert_eq!(p.coeffs[2], gr(3));
        assert_eq!(p.coeffs[4], GaussRat::from_ratio(-1, 2));
        assert!(p.coeffs[1].is_zero() && p.coeffs[3].is_zero());
        assert_eq!(m.coeffs[0], GaussRat::from_ratio(-1, 2));
        assert_eq!(m.coeffs[2], gr(3));
        // C3 = 1: C+_2 = -3i, C-_2 = 3i.
        let mut w = WeylComponents::default();
        w.0[3] = GaussRat::one();
        let (p, m) = weyl_to_cpm(&w);
        assert_eq!(p.coeffs[2], &gr(-3) * &GaussRat::i());
        assert_eq!(m.coeffs[2], &gr(3) * &GaussRat::i());
    }

    #[test]
    fn wcomp_rank_is_full_as_printed() {
        let report = cpm_rank_report();
        assert_eq!(report.rank, 10);
        assert!(report.full_rank);
        assert_eq!(report.c3_row_factors, (8, 2));
    }

    #[test]
    fn enem_examples() {
        // T00 = T33 = 1, rest 0: T'22 = 2, T'11 = 0, T'00 = 2.
        let mut t = StressTensor::default();
        t.entries[0] = gr(1);
        t.entries[9] = gr(1);
        let p = stress_to_primed(&t);
        assert_eq!(*p.get(2, 2), gr(2));
        assert_eq!(*p.get(1, 1), gr(0));
        assert_eq!(*p.get(0, 0), gr(2));
        // zero tensor -> zero primed
        let p = stress_to_primed(&StressTensor::default());
        assert_eq!(p, PrimedStress::default());
    }

    fn random_tensor(rng: &mut StdRng, traceless: bool) -> StressTensor {
        let mut t = StressTensor::default();
        for i in 0..10 {
            t.entries[i] = GaussRat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        }
        if traceless {
            // solve T00 = T11 + T22 + T33
            t.entries[0] = &(&t.entries[4] + &t.entries[7]) + &t.entries[9];
        }
        t
    }

    #[test]
    fn enem_roundtrips() {
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..100 {
            // primed -> unprimed -> primed is the identity on any primed data
            let t = random_tensor(&mut rng, false);
            let p = stress_to_primed(&t);
            let back = stress_to_primed(&primed_to_stress(&p));
            assert_eq!(p, back);
            // unprimed -> primed -> unprimed is the identity on traceless
            let t = random_tensor(&mut rng, true);
            assert!(t.is_traceless());
            let t2 = primed_to_stress(&stress_to_primed(&t));
            assert_eq!(t, t2);
            assert!(t2.is_traceless());
        }
    }

    #[test]
    fn enem_matches_linear_solve_oracle() {
        // Oracle: solve theforward system (nine primed rows plus the trace
        // row) by Gaussian elimination instead of the closed-form inverse.
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let t = random_tensor(&mut rng, true);
            let p = stress_to_primed(&t);
            // unknown vector ordering matches StressTensor::entries
            let mut rows: Vec<([GaussRat; 10], GaussRat)> = Vec::new();
            // build each primed row by probing basis tensors
            let mut basis_cols: Vec<PrimedStress> = Vec::new();
            for k in 0..10 {
                let mut basis = StressTensor::default();
                basis.entries[k] = GaussRat::one();
                basis_cols.push(stress_to_primed(&basis));
            }
            for (i, j) in [
                (0usize, 0usize),
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 1),
                (1, 2),
                (2, 0),
                (2, 1),
                (2, 2),
            ] {
                let mut row: [GaussRat; 10] = Default::default();
                for (k, col) in basis_cols.iter().enumerate() {
                    row[k] = col.get(i, j).clone();
                }
                rows.push((row, p.get(i, j).clone()));
            }
            // trace row: T00 - T11 - T22 - T33 = 0
            let mut trace_row: [GaussRat; 10] = Default::default();
            trace_row[0] = gr(1);
            trace_row[4] = gr(-1);
            trace_row[7] = gr(-1);
            trace_row[9] = gr(-1);
            rows.push((trace_row, GaussRat::zero()));

            let solution = solve(rows);
            assert_eq!(solution, t.entries.to_vec());
        }
    }

    fn solve(mut rows: Vec<([GaussRat; 10], GaussRat)>) -> Vec<GaussRat> {
        let n = 10;
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..n {
            let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let inv = rows[pivot_row].0[col].inv();
            for c in 0..n {
                rows[pivot_row].0[c] = &rows[pivot_row].0[c] * &inv;
            }
            rows[pivot_row].1 = &rows[pivot_row].1 * &inv;
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r].0[col].is_zero() {
                    let f = rows[r].0[col].clone();
                    for c in 0..n {
                        rows[r].0[c] = &rows[r].0[c] - &(&f * &rows[pivot_row].0[c]);
                    }
                    rows[r].1 = &rows[r].1 - &(&f * &rows[pivot_row].1);
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        let mut out = vec![GaussRat::zero(); n];
        for (r, c) in pivots {
            out[c] = rows[r].1.clone();
        }
        out
    }

    #[test]
    fn lightcone_examples() {
        let lc = lightcone_map(&[gr(1), gr(0), gr(0), gr(0)]);
        assert_eq!(lc.plus, gr(1));
        assert_eq!(lc.minus, gr(1));
        assert!(lc.v.is_zero() && lc.vbar.is_zero());
        let lc = lightcone_map(&[gr(0), gr(1), gr(0), gr(0)]);
        assert_eq!(lc.v, gr(1));
        assert_eq!(lc.vbar, gr(1));
        assert!(lc.plus.is_zero() && lc.minus.is_zero());
        let lc = lightcone_map(&[gr(0), gr(0), gr(1), gr(0)]);
        assert_eq!(lc.v, -&GaussRat::i());
        assert_eq!(lc.vbar, GaussRat::i());
    }

    #[test]
    fn lightcone_pairing_identity() {
        // k.x = k0 x0 - k1 x1 - k2 x2 - k3 x3 must equal
        // (k+ x- + k- x+ - kv vb - kvb v)/2 as a bilinear form: check on all
        // 16 basis pairs.
        let half = GaussRat::from_ratio(1, 2);
        for ki in 0..4 {
            for xi in 0..4 {
                let mut k = [gr(0), gr(0), gr(0), gr(0)];
                let mut x = [gr(0), gr(0), gr(0), gr(0)];
                k[ki] = gr(1);
                x[xi] = gr(1);
                let eta = if ki != xi {
                    gr(0)
                } else if ki == 0 {
                    gr(1)
                } else {
                    gr(-1)
                };
                let klc = lightcone_map(&k);
                let xlc = lightcone_map(&x);
                let rhs = &half
                    * &(&(&(&klc.plus * &xlc.minus) + &(&klc.minus * &xlc.plus))
                        - &(&(&klc.v * &xlc.vbar) + &(&klc.vbar * &xlc.v)));
                assert_eq!(rhs, eta, "basis pair ({ki}, {xi})");
            }
        }
    }
}
