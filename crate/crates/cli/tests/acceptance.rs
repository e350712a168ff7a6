//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector, Matrix4, Matrix5, Matrix6, SymmetricEigen, Vector4};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use taulab_core::adm::constraints::{hamiltonian_from_parts, kinetic_identity_check, trace_law_residual};
use taulab_core::adm::extrinsic::extrinsic_from_k;
use taulab_core::adm::{gauss_law, AdmSample, Boundary, Lattice, MetricFamily, MetricGrid, SymTensorGrid};
use taulab_core::clifford::{clifford_metric, m24_embedding, Blade, DEFAULT_M24_BLADES};
use taulab_core::fields::{
    coupled_dispersion_check, kg6_dispersion_residual, kg6_evolve_lightcone, reduce_ansatz, stueckelberg_evolve,
    LatticeField, Periodic, PlaneWave6, ReductionParams, StueckelbergEvolver,
};
use taulab_core::linalg::Mat;
use taulab_core::particle::{
    gauge_fixed_residual, geodesic_integrate, mass_shell_split, zero_mode_constraints, zero_mode_from_contravariant,
    ExtraBlock, GeodesicOptions,
};
use taulab_core::wdw::{reduced_hamiltonian, BetaGrid, MidpointStepper, MinisuperspaceConfig, Wavepacket};
use taulab_core::Rational64;

type C = Complex<f64>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const ETA: [i64; 4] = [1, -1, -1, -1];

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0xacce97);
    r.set_stream(stream);
    r
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(budget: Duration, elapsed: Duration, detail: String) -> Outcome {
    ensure(elapsed < budget, format!("{detail}, {:.3} s (budget {:.3} s)", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

// ---- Clifford oracles -------------------------------------------------------

/// Dirac representation of γ₀..γ₃.
fn gammas() -> [Matrix4<C>; 4] {
    let (o, i, z) = (C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(0.0, 0.0));
    let g0 = Matrix4::from_diagonal(&Vector4::new(o, o, -o, -o));
    let block = |s: [[C; 2]; 2]| {
        Matrix4::new(
            z, z, s[0][0], s[0][1],
            z, z, s[1][0], s[1][1],
            -s[0][0], -s[0][1], z, z,
            -s[1][0], -s[1][1], z, z,
        )
    };
    [g0, block([[z, o], [o, z]]), block([[z, -i], [i, z]]), block([[o, z], [z, -o]])]
}

/// `¼ tr(γ_S‡ γ_S)` in the matrix representation.
fn dirac_norm(b: Blade) -> i64 {
    let g = gammas();
    let word: Vec<usize> = b.indices().collect();
    let m: Matrix4<C> = word.iter().fold(Matrix4::identity(), |m, &i| m * g[i]);
    let rev: Matrix4<C> = word.iter().rev().fold(Matrix4::identity(), |m, &i| m * g[i]);
    let t = (rev * m).trace() / 4.0;
    assert!(t.im.abs() < 1e-12 && (t.re - t.re.round()).abs() < 1e-12);
    t.re.round() as i64
}

/// Scalar value of a word of generators, reduced by adjacent swaps
/// (`γ_iγ_j = −γ_jγ_i`) and contractions (`γ_iγ_i = η_ii`).
fn reduce_word(mut word: Vec<usize>) -> Option<i64> {
    let mut sign = 1i64;
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < word.len() {
            if word[k] == word[k + 1] {
                sign *= ETA[word[k]];
                word.drain(k..k + 2);
                changed = true;
            } else if word[k] > word[k + 1] {
                word.swap(k, k + 1);
                sign = -sign;
                changed = true;
                k += 1;
            } else {
                k += 1;
            }
        }
        if !changed {
            break;
        }
    }
    word.is_empty().then_some(sign)
}

fn blade_norm_by_expansion(b: Blade) -> i64 {
    let word: Vec<usize> = b.indices().collect();
    let mut full: Vec<usize> = word.iter().rev().copied().collect();
    full.extend(&word);
    reduce_word(full).expect("a blade times its reverse is a scalar")
}

fn c1_signature() -> Outcome {
    let t = Instant::now();
    let metric = clifford_metric();
    let elapsed = t.elapsed();
    let plus = Blade::all().filter(|&b| dirac_norm(b) > 0).count();
    let oracle = (plus, 16 - plus);
    ensure(metric.signature == (8, 8) && oracle == (8, 8), format!("core {:?}, Dirac traces {oracle:?}", metric.signature))?;
    within(Duration::from_millis(1), elapsed, format!("signature {:?}", metric.signature))
}

fn c2_blade_norms() -> Outcome {
    let t = Instant::now();
    let metric = clifford_metric();
    let elapsed = t.elapsed();
    let mut bad = Vec::new();
    for b in Blade::all() {
        let eta_product: i64 = b.indices().map(|i| ETA[i]).product();
        let expanded = blade_norm_by_expansion(b);
        if i64::from(metric.sign(b)) != eta_product || expanded != eta_product || dirac_norm(b) != eta_product {
            bad.push(b.mask());
        }
    }
    ensure(bad.is_empty(), format!("mismatched blades {bad:?}"))?;
    within(Duration::from_millis(1), elapsed, "16 blades agree".into())
}

fn c3_m24() -> Outcome {
    let e = m24_embedding(None).map_err(|e| e.to_string())?;
    let oracle: Vec<i64> = DEFAULT_M24_BLADES.iter().map(|&b| blade_norm_by_expansion(b)).collect();
    let plus = oracle.iter().filter(|&&s| s > 0).count();
    let ordered = e.spacetime_first().metric;
    // congruent to (+−−−−+) iff the sign multisets agree (Sylvester)
    let mut sorted = ordered;
    sorted.sort();
    ensure(
        e.signature() == (2, 4) && (plus, 6 - plus) == (2, 4) && ordered == [1, -1, -1, -1, -1, 1] && sorted == [-1, -1, -1, -1, 1, 1],
        format!("core {:?}, expansion ({plus},{}), ordered {ordered:?}", e.signature(), 6 - plus),
    )
}

// ---- fields -------------------------------------------------------------------

fn minkowski_sq(k: &[f64]) -> f64 {
    k[0] * k[0] - k[1..].iter().map(|x| x * x).sum::<f64>()
}

fn c4_reduction() -> Outcome {
    let mut r = rng(4);
    let l = 20.0;
    let grid = Periodic::new(vec![256, 256], vec![l, l]).map_err(|e| e.to_string())?;
    let span = 10.0;
    let steps = 4;
    let (mut paths, mut analytic) = (0.0f64, 0.0f64);
    let mut elapsed = Duration::ZERO;
    for _ in 0..10 {
        let lambda = r.gen_range(0.5..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let m = r.gen_range(0.0..2.0);
        let waves: Vec<PlaneWave6<f64>> = (0..r.gen_range(3..=5))
            .map(|_| {
                let k: Vec<f64> = (0..2).map(|_| std::f64::consts::TAU * r.gen_range(-6i32..=6) as f64 / l).collect();
                let p5 = (minkowski_sq(&k) - m * m) / (2.0 * lambda);
                PlaneWave6 { amplitude: C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), k, p5, p6: lambda }
            })
            .collect();
        let t = Instant::now();
        let red = reduce_ansatz(&waves, grid.clone(), m).map_err(|e| e.to_string())?;
        let lc = kg6_evolve_lightcone(&red.psi0, red.params, span, steps).map_err(|e| e.to_string())?;
        let st = stueckelberg_evolve(red.psi0.clone(), red.params, span, steps).map_err(|e| e.to_string())?;
        elapsed += t.elapsed();
        for (n, (a, b)) in lc.iter().zip(&st).enumerate() {
            paths = paths.max(a.max_abs_diff(b));
            // φ(τ, λ=0, x) = Σ a e^{i(k·x + P₅τ)}
            let tau = span * n as f64 / steps as f64;
            let exact = LatticeField::from_fn(grid.clone(), |x| {
                waves.iter().map(|w| w.amplitude * C::from_polar(1.0, w.k[0] * x[0] + w.k[1] * x[1] + w.p5 * tau)).sum()
            });
            analytic = analytic.max(b.max_abs_diff(&exact)).max(a.max_abs_diff(&exact));
        }
    }
    ensure(paths < 1e-10 && analytic < 1e-10, format!("paths differ by {paths:e}, analytic gap {analytic:e} (tol 1e-10)"))?;
    within(Duration::from_secs(5), elapsed, format!("paths differ by {paths:e}, analytic gap {analytic:e}"))
}

fn c5_unitarity() -> Outcome {
    let grid = Periodic::new(vec![128, 128], vec![30.0, 30.0]).map_err(|e| e.to_string())?;
    let cell = grid.cell_volume();
    let norm = |f: &LatticeField<f64>| cell * f.values.iter().map(|v| v.re * v.re + v.im * v.im).sum::<f64>();
    let t = Instant::now();
    let psi0 = LatticeField::gaussian(grid, &[1.0, -2.0], &[1.5, 2.0], &[0.5, 1.0]).map_err(|e| e.to_string())?;
    let n0 = norm(&psi0);
    let ev = StueckelbergEvolver::new(psi0, ReductionParams::new(0.7, 1.0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut drift = 0.0f64;
    ev.trajectory(20.0, 1000, |_, _, f| {
        drift = drift.max((norm(f) - n0).abs() / n0);
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(drift < 1e-12, format!("relative drift {drift:e} (tol 1e-12)"))?;
    within(Duration::from_secs(2), elapsed, format!("relative drift {drift:e}"))
}

/// Light-cone inverse 6-metric `diag(η) ⊕ [[0, −1], [−1, 0]]`.
fn light_cone_inverse() -> Matrix6<f64> {
    let mut g = Matrix6::from_diagonal(&nalgebra::Vector6::new(1.0, -1.0, -1.0, -1.0, 0.0, 0.0));
    g[(4, 5)] = -1.0;
    g[(5, 4)] = -1.0;
    g
}

fn c6_mass_shell() -> Outcome {
    let mut r = rng(6);
    let g6 = light_cone_inverse();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p: Vec<f64> = (0..4).map(|_| r.gen_range(-3.0..3.0)).collect();
        let p6 = r.gen_range(0.2..3.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let m = r.gen_range(0.0..2.0);
        // choose P₅ so that the 6D quadratic form is on shell
        let p5 = (minkowski_sq(&p) - m * m) / (2.0 * p6);
        let big = nalgebra::Vector6::new(p[0], p[1], p[2], p[3], p5, p6);
        let scale = minkowski_sq(&p).abs().max(m * m).max(1.0);
        let oracle_shell = (big.transpose() * g6 * big)[0] - m * m;
        let split = mass_shell_split(p5, p6, m, ExtraBlock::LightCone);
        let split_gap = (split.m2 - (m * m + 2.0 * p5 * p6)).abs();
        let residual = kg6_dispersion_residual(&p, p5, p6, m);
        worst = worst.max(split_gap.max(residual.abs()).max(oracle_shell.abs()) / scale);
        worst = worst.max((split.m2 - minkowski_sq(&p)).abs() / scale);
    }
    ensure(worst < 1e-12, format!("max residual {worst:e} (tol 1e-12)"))
}

// ---- ADM ----------------------------------------------------------------------

fn random_metric(r: &mut ChaCha8Rng) -> Mat<f64, 4> {
    let mut g = [[0.0; 4]; 4];
    for a in 0..4 {
        g[a][a] = if a == 0 { 1.0 } else { -1.0 } * r.gen_range(0.5..2.0);
        for b in a + 1..4 {
            g[a][b] = r.gen_range(-0.1..0.1);
            g[b][a] = g[a][b];
        }
    }
    g
}

fn random_sym(r: &mut ChaCha8Rng) -> Mat<f64, 4> {
    let mut k = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in a..4 {
            k[a][b] = r.gen_range(-1.0..1.0);
            k[b][a] = k[a][b];
        }
    }
    k
}

fn random_adm(r: &mut ChaCha8Rng) -> AdmSample<f64> {
    let lapse = r.gen_range(0.5..2.0);
    let shift = std::array::from_fn(|_| r.gen_range(-0.5..0.5));
    AdmSample::new(lapse, shift, random_metric(r))
}

fn na4(m: &Mat<f64, 4>) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

fn na5(m: &Mat<f64, 5>) -> Matrix5<f64> {
    Matrix5::from_fn(|i, j| m[i][j])
}

/// 5-metric assembled from lapse and shift with nalgebra.
fn oracle_5d(s: &AdmSample<f64>) -> Matrix5<f64> {
    let g = na4(&s.g);
    let shift = Vector4::from(s.shift);
    let up = g.try_inverse().expect("invertible") * shift;
    let mut big = Matrix5::zeros();
    big[(0, 0)] = s.lapse * s.lapse + shift.dot(&up);
    for a in 0..4 {
        big[(0, a + 1)] = shift[a];
        big[(a + 1, 0)] = shift[a];
        for b in 0..4 {
            big[(a + 1, b + 1)] = g[(a, b)];
        }
    }
    big
}

fn c7_adm_round_trip() -> Outcome {
    let mut r = rng(7);
    let samples: Vec<_> = (0..1000).map(|_| random_adm(&mut r)).collect();
    let t = Instant::now();
    let pairs: Vec<_> = samples
        .iter()
        .map(|s| Ok((s.compose_5d()?, s.invert_5d()?)))
        .collect::<taulab_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let (mut ident, mut oracle) = (0.0f64, 0.0f64);
    for (s, (big, inv)) in samples.iter().zip(&pairs) {
        let prod = na5(big) * na5(inv);
        ident = ident.max((prod - Matrix5::identity()).abs().max());
        oracle = oracle.max((na5(big) - oracle_5d(s)).abs().max());
        let lu = na5(big).try_inverse().ok_or("oracle inverse failed")?;
        oracle = oracle.max((lu - na5(inv)).abs().max());
    }
    ensure(ident < 1e-12 && oracle < 1e-12, format!("|GG⁻¹ − I| = {ident:e}, oracle gap {oracle:e} (tol 1e-12)"))?;
    within(Duration::from_secs(1), elapsed, format!("|GG⁻¹ − I| = {ident:e}"))
}

fn c8_kinetic() -> Outcome {
    let mut r = rng(8);
    let (mut kin, mut trace, mut oracle) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let g = random_metric(&mut r);
        let k = random_sym(&mut r);
        let ex = extrinsic_from_k(k, &g).map_err(|e| e.to_string())?;
        kin = kin.max(kinetic_identity_check(&ex.p_upper, &g).map_err(|e| e.to_string())?);
        trace = trace.max(trace_law_residual(&ex, &g).map_err(|e| e.to_string())?);
        // both sides from nalgebra
        let (gm, km) = (na4(&g), na4(&k));
        let gi = gm.try_inverse().ok_or("singular draw")?;
        let kt = (gi * km).trace();
        let k_up = gi * km * gi;
        let sqrt_g = gm.determinant().abs().sqrt();
        let p = (gi * kt - k_up) * sqrt_g;
        let lhs = kt * kt - k_up.component_mul(&km).sum();
        let pt = gm.component_mul(&p).sum();
        let rhs = (pt * pt / 3.0 - p.component_mul(&(gm * p * gm)).sum()) / (sqrt_g * sqrt_g);
        oracle = oracle.max((lhs - rhs).abs()).max((pt - 3.0 * sqrt_g * kt).abs()).max((p - na4(&ex.p_upper)).abs().max());
    }
    ensure(
        kin < 1e-10 && trace < 1e-10 && oracle < 1e-10,
        format!("kinetic {kin:e}, trace {trace:e}, nalgebra oracle {oracle:e} (tol 1e-10)"),
    )
}

fn c9_hamiltonian_paths() -> Outcome {
    let mut r = rng(9);
    let (mut gap, mut oracle) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let g = random_metric(&mut r);
        let k = random_sym(&mut r);
        let curv = r.gen_range(-2.0..2.0);
        let ex = extrinsic_from_k(k, &g).map_err(|e| e.to_string())?;
        let h = hamiltonian_from_parts(&ex, &g, curv).map_err(|e| e.to_string())?;
        let scale = h.value().abs().max(1.0);
        gap = gap.max(h.disagreement() / scale);
        let (gm, km) = (na4(&g), na4(&k));
        let gi = gm.try_inverse().ok_or("singular draw")?;
        let kt = (gi * km).trace();
        let exact = gm.determinant().abs().sqrt() * (curv + kt * kt - (gi * km * gi).component_mul(&km).sum());
        oracle = oracle.max((exact - h.k_form).abs() / scale);
    }
    ensure(gap < 1e-10 && oracle < 1e-10, format!("two-path gap {gap:e}, nalgebra oracle {oracle:e} (tol 1e-10, relative)"))
}

fn c10_gauss() -> Outcome {
    let n = 32;
    let h = 0.2;
    let lat = Lattice::<f64, 4>::new([n; 4], [h; 4], [0.0; 4]);
    let w = std::f64::consts::TAU / (n as f64 * h);
    let field = |x: &[f64; 4]| {
        let s = (w * x[0]).sin() * (w * x[1]).cos() + (w * (x[2] + x[3])).sin();
        let mut m = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in a..4 {
                m[a][b] = s * (1.0 + a as f64) + ((a + 2 * b) as f64 * w * x[b]).cos();
                m[b][a] = m[a][b];
            }
        }
        m
    };
    let t = Instant::now();
    let grid = SymTensorGrid::from_fn(lat, field);
    let (lo, hi) = ([3, 5, 2, 7], [29, 27, 30, 20]);
    let law = gauss_law(&grid, lo, hi).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();

    // independent face flux: average of the two cells straddling each face
    let at = |i: [usize; 4]| field(&i.map(|c| c as f64 * h));
    let mut flux = [0.0f64; 4];
    let face = h * h * h;
    for nu in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&a| a != nu).collect();
        for i in lo[others[0]]..hi[others[0]] {
            for j in lo[others[1]]..hi[others[1]] {
                for k in lo[others[2]]..hi[others[2]] {
                    let mut idx = [0usize; 4];
                    idx[others[0]] = i;
                    idx[others[1]] = j;
                    idx[others[2]] = k;
                    let mut up = idx;
                    up[nu] = hi[nu] - 1;
                    let mut up_out = up;
                    up_out[nu] = (hi[nu]) % n;
                    let mut dn = idx;
                    dn[nu] = lo[nu];
                    let mut dn_out = dn;
                    dn_out[nu] = (lo[nu] + n - 1) % n;
                    let (a, b, c, d) = (at(up), at(up_out), at(dn), at(dn_out));
                    for mu in 0..4 {
                        flux[mu] += 0.5 * (a[mu][nu] + b[mu][nu] - c[mu][nu] - d[mu][nu]) * face;
                    }
                }
            }
        }
    }
    let oracle = (0..4).map(|m| (flux[m] - law.volume[m]).abs()).fold(0.0, f64::max);
    let mismatch = law.max_mismatch();
    ensure(mismatch < 1e-10 && oracle < 1e-10, format!("core mismatch {mismatch:e}, independent flux gap {oracle:e} (tol 1e-10)"))?;
    within(Duration::from_secs(10), elapsed, format!("mismatch {mismatch:e}"))
}

// ---- particle -----------------------------------------------------------------

fn c11_geodesics() -> Outcome {
    let e = |e: taulab_core::Error| e.to_string();
    // flat space: straight lines through the analytic solution X(σ) = X₀ + V σ
    let flat = MetricFamily::Flat { lapse: 1.0, shift: [0.0; 4] };
    let mut opts = GeodesicOptions::new(1000, 1e-2);
    opts.normalize = false;
    let v0 = [1.2, 0.4, -0.3, 0.2, 0.1];
    let wl = geodesic_integrate(&flat, [0.0f64; 5], v0, opts).map_err(e)?;
    let line = wl
        .states
        .iter()
        .flat_map(|s| (0..5).map(move |a| (s.x[a] - v0[a] * s.sigma).abs() / (1.0 + s.sigma)))
        .fold(0.0, f64::max);

    let kasner = MetricFamily::Kasner5 { exponents: [0.5, 0.5, 0.5, -0.5] };
    let mut ends = Vec::new();
    for n in [10usize, 20, 40, 80] {
        let mut opts = GeodesicOptions::new(n, 1.0 / n as f64);
        opts.normalize = false;
        let wl = geodesic_integrate(&kasner, [1.0, 0.0, 0.0, 0.0, 0.0], [1.0, 0.6, 0.4, -0.3, 0.2], opts).map_err(e)?;
        ends.push(wl.states.last().ok_or("empty worldline")?.x);
    }
    let gaps: Vec<f64> = ends.windows(2).map(|w| (0..5).map(|a| (w[0][a] - w[1][a]).abs()).fold(0.0, f64::max)).collect();
    let orders: Vec<f64> = gaps.windows(2).map(|w| (w[0] / w[1]).log2()).collect();

    // the conformal family is independent of τ and x⁰, so P_τ and P_0 are conserved
    let conf = MetricFamily::Conformal { amplitude: 0.3, wavenumber: 1.0 };
    let wl = geodesic_integrate(&conf, [0.0, 0.0, 0.1, 0.0, 0.0], [0.2, 1.5, 0.7, 0.1, -0.2], GeodesicOptions::new(10_000, 1e-3))
        .map_err(e)?;
    let first: [f64; 5] = wl.states[0].p;
    let drift = wl.states.iter().map(|s| (s.p[0] - first[0]).abs().max((s.p[1] - first[1]).abs())).fold(0.0, f64::max);

    ensure(
        line < 1e-12 && orders.iter().all(|o| (o - 4.0).abs() < 0.3) && drift < 1e-9,
        format!("flat deviation {line:e} (tol 1e-12), orders {orders:.3?} (4.0 ± 0.3), Killing drift {drift:e} (tol 1e-9)"),
    )
}

/// Vacuum conditions of `g = diag(1, ±τ^{2p_a})` from the one-variable
/// reduction: `R_ττ ∝ Σp − Σp²`, `R_aa ∝ p_a(Σp − 1)`.
fn kasner_vacuum(p: &[Rational64; 4]) -> bool {
    let sum: Rational64 = p.iter().sum();
    let sq: Rational64 = p.iter().map(|x| x * x).sum();
    let one = Rational64::from(1);
    sum == sq && p.iter().all(|x| *x * (sum - one) == Rational64::from(0))
}

fn c12_kasner() -> Outcome {
    let exps = [Rational64::new(1, 2), Rational64::new(1, 2), Rational64::new(1, 2), Rational64::new(-1, 2)];
    if !kasner_vacuum(&exps) {
        return Err("exponents fail the exact vacuum conditions".into());
    }
    // the check must also reject a non-vacuum set
    if kasner_vacuum(&[Rational64::new(1, 2), Rational64::new(1, 2), Rational64::new(1, 2), Rational64::new(1, 2)]) {
        return Err("vacuum oracle accepts a non-vacuum set".into());
    }
    let fam = MetricFamily::Kasner5 { exponents: exps.map(|r| *r.numer() as f64 / *r.denom() as f64) };
    let mut residuals = Vec::new();
    for n in [9usize, 17, 33, 65] {
        let h = 1.0 / (n - 1) as f64;
        let lat = Lattice::<f64, 5>::new([n, 3, 3, 3, 3], [h; 5], [1.0, 0.0, 0.0, 0.0, 0.0]).with_boundary([
            Boundary::Strict,
            Boundary::Periodic,
            Boundary::Periodic,
            Boundary::Periodic,
            Boundary::Periodic,
        ]);
        let grid = MetricGrid::from_fn(lat, |y| fam.metric_5d(y));
        residuals.push(grid.curvature_at(&[(n - 1) / 2, 1, 1, 1, 1]).map_err(|e| e.to_string())?.ricci_max_abs());
    }
    let orders: Vec<f64> = residuals.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    ensure(orders.iter().all(|o| (o - 2.0).abs() < 0.2), format!("Ricci residuals {residuals:.3?}, orders {orders:.3?} (2.0 ± 0.2)"))
}

fn c13_zero_mode() -> Outcome {
    let mut r = rng(13);
    let e = |e: taulab_core::Error| e.to_string();
    let (mut gap, mut closed, mut inexact) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..200 {
        let adm = random_adm(&mut r);
        let p: [f64; 5] = std::array::from_fn(|_| r.gen_range(-2.0..2.0));
        let kappa = r.gen_range(0.1..5.0);
        let cov = zero_mode_constraints(&p, &adm, kappa).map_err(e)?;
        let inv = oracle_5d(&adm).try_inverse().ok_or("singular draw")?;
        let up = inv * nalgebra::Vector5::from(p);
        let contra = zero_mode_from_contravariant(&up.into(), &adm, kappa).map_err(e)?;
        gap = gap.max(cov.max_abs_diff(&contra));
        // closed form: H = −κ N P⁵, H_μ = κ P_μ
        closed = closed.max((cov.h + kappa * adm.lapse * up[0]).abs());
        closed = closed.max((0..4).map(|m| (cov.h_mu[m] - kappa * p[m + 1]).abs()).fold(0.0, f64::max));
        for j in -6..=6 {
            let lam = 2f64.powi(j);
            let scaled = zero_mode_constraints(&p, &adm, lam * kappa).map_err(e)?;
            if scaled.h != lam * cov.h || (0..4).any(|m| scaled.h_mu[m] != lam * cov.h_mu[m]) {
                inexact += 1;
            }
        }
    }
    ensure(
        gap < 1e-12 && closed < 1e-12 && inexact == 0,
        format!("raising gap {gap:e}, closed form {closed:e} (tol 1e-12), inexact scalings {inexact}"),
    )
}

// ---- minisuperspace -------------------------------------------------------------

fn c14_minisuperspace() -> Outcome {
    let e = |e: taulab_core::Error| e.to_string();
    let t = Instant::now();
    let grid = BetaGrid::new(-8.0, 8.0, 1024).map_err(e)?;
    let ham = reduced_hamiltonian(&MinisuperspaceConfig::iso(1.0, 1.0), grid).map_err(e)?;
    let h = grid.h();
    let norm = |psi: &[C]| h * psi.iter().map(|v| v.re * v.re + v.im * v.im).sum::<f64>();

    let stepper = MidpointStepper::new(ham.clone(), 1e-3).map_err(e)?;
    let mut p = Wavepacket::gaussian(grid, 1.0, 0.5, 0.0).map_err(e)?;
    let n0 = norm(&p.psi);
    let mut drift = 0.0f64;
    stepper
        .run(&mut p, 10_000, |_, q| {
            drift = drift.max((norm(&q.psi) - n0).abs());
            Ok(())
        })
        .map_err(e)?;
    let elapsed = t.elapsed();

    // error against eigen-propagation; the packet stays clear of the stiff small-β end
    let dense = ham.to_dense();
    let n = ham.len();
    let eig = SymmetricEigen::new(DMatrix::from_fn(n, n, |i, j| dense[i][j]));
    let start = Wavepacket::gaussian(grid, 2.0, 0.3, 0.0).map_err(e)?;
    let v = eig.eigenvectors.map(|x| C::new(x, 0.0));
    let coeffs = v.adjoint() * DVector::from_column_slice(&start.psi);
    let tau = 1.0;
    let exact = &v * DVector::from_fn(n, |k, _| coeffs[k] * C::from_polar(1.0, -eig.eigenvalues[k] * tau));
    let mut errors = Vec::new();
    for steps in [100usize, 200, 400] {
        let st = MidpointStepper::new(ham.clone(), tau / steps as f64).map_err(e)?;
        let mut q = start.clone();
        st.run(&mut q, steps, |_, _| Ok(())).map_err(e)?;
        errors.push(q.psi.iter().zip(exact.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    ensure(
        drift < 1e-10 && orders.iter().all(|o| (o - 2.0).abs() < 0.2),
        format!("norm drift {drift:e} (tol 1e-10), errors {errors:.3?}, orders {orders:.3?} (2.0 ± 0.2)"),
    )?;
    within(Duration::from_secs(30), elapsed, format!("norm drift {drift:e}, orders {orders:.3?}"))
}

fn c15_quantum_classical() -> Outcome {
    let mut r = rng(15);
    let (mut unequal, mut oracle) = (0usize, 0.0f64);
    for _ in 0..100 {
        let g = random_metric(&mut r);
        let g_inv = na4(&g).try_inverse().ok_or("singular draw")?;
        let gi: Mat<f64, 4> = std::array::from_fn(|a| std::array::from_fn(|b| g_inv[(a, b)]));
        let p: [f64; 4] = std::array::from_fn(|_| r.gen_range(-3.0..3.0));
        let p5 = r.gen_range(-3.0..3.0);
        let m = r.gen_range(0.0..3.0);
        let quantum = coupled_dispersion_check(&gi, &p, p5, m);
        let classical = gauge_fixed_residual(&gi, &p, p5, m);
        if quantum.to_bits() != classical.to_bits() {
            unequal += 1;
        }
        let pv = Vector4::from(p);
        oracle = oracle.max(((pv.transpose() * g_inv * pv)[0] + p5 * p5 - m * m - classical).abs());
    }
    ensure(unequal == 0 && oracle < 1e-12, format!("{unequal} unequal draws, nalgebra gap {oracle:e}"))
}

fn c16_determinism() -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let status = Command::new(env!("CARGO_BIN_EXE_taulab"))
            .args(["verify-all", "--seed", "42"])
            .env("TAULAB_OUT_DIR", dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("verify-all exited with {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stdout)));
        }
        std::fs::read(dir.path().join("verify-all.manifest.json")).map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, format!("{} and {} bytes, identical: {}", a.len(), b.len(), a == b))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 16] = [
        ("clifford signature", c1_signature),
        ("blade norm table", c2_blade_norms),
        ("M(2,4) embedding", c3_m24),
        ("reduction theorem", c4_reduction),
        ("stueckelberg unitarity", c5_unitarity),
        ("mass-shell consistency", c6_mass_shell),
        ("ADM round trip", c7_adm_round_trip),
        ("kinetic identity", c8_kinetic),
        ("hamiltonian two-path agreement", c9_hamiltonian_paths),
        ("gauss-law analogue", c10_gauss),
        ("geodesics", c11_geodesics),
        ("kasner vacuum", c12_kasner),
        ("zero-mode constraints", c13_zero_mode),
        ("minisuperspace unitarity", c14_minisuperspace),
        ("quantum-classical dispersion", c15_quantum_classical),
        ("determinism", c16_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
