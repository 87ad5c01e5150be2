//! One function per subcommand. Each returns a filled [`Report`].
//!
//! Cell `c` (counted in row order) with repetition `i` draws from
//! `sub_rng(seed, c, i)`, so adding rows to a sweep never changes the others'
//! streams unless it shifts their position.

use num_rational::Ratio;
use quditbench::games::{
    classical_relabeling, key_recovery_attack, key_recovery_budget, quantum_relabeling_tracedist, run_ind_game,
    stats::Z_99, wilson_99, ChallengeDecryptor, ClassicalMode, IndReport, KeyEstimator,
    KeyRecoveryAdversary, Mode, RandomGuess, RelabelConfig, ReplayAdversary,
};
use quditbench::learn::{
    bernstein_vazirani, bernstein_vazirani_distribution, deutsch_jozsa, extended_bv, extended_bv_lwe,
    quantum_parity_learn, DjVerdict, SecretSpec,
};
use quditbench::modmath::{euler_product, gcd, rosser_schoenfeld_bound, totient, totient_ratio, ErrorDistribution};
use quditbench::oracles::{
    bitflip_code_cycle, channel_apply, repetition_monte_carlo, repetition_success_prob, Channel, OracleSpec,
};
use quditbench::qudit::{check_root_orthogonality, check_shift_diagonality, digits_of, gates, qft_matrix, UnitaryOp};
use quditbench::rng::{sub_rng, trial_rng};
use quditbench::schemes::{lwe_skes, periodized_prf_scheme, prf_scheme, PrfFamily, Scheme};
use quditbench::{Density, Error, Result, State};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::report::{ci_cell, num, Report, EXACT};
use crate::*;

const EXACT_TOL: f64 = 1e-9;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len().max(1) as f64
}

pub fn dj(a: &DjArgs) -> Result<Report> {
    let mut r = Report::new(
        "dj",
        a,
        &["n", "kind", "functions", "p_zero_min", "p_zero_max", "correct", "ci99", "pass"],
    );
    let mut cell = 0u64;
    for &n in &a.n.0 {
        if n == 0 || n > 16 {
            return Err(usage("dj needs 1 ≤ n ≤ 16"));
        }
        for &kind in &a.kind.0 {
            let (mut lo, mut hi, mut correct) = (f64::INFINITY, f64::NEG_INFINITY, 0);
            let mut violated = false;
            for i in 0..a.functions as u64 {
                let mut rng = sub_rng(a.common.seed, cell, i);
                let f = match kind {
                    DjKind::Constant => OracleSpec::constant(n, 2, rng.gen_range(0..2))?,
                    DjKind::Balanced => {
                        let mut table: Vec<usize> = (0..1usize << n).map(|x| usize::from(x >= 1 << (n - 1))).collect();
                        table.shuffle(&mut rng);
                        OracleSpec::from_table(n, 2, 1, table)?
                    }
                };
                let out = deutsch_jozsa(&f, &mut rng)?;
                lo = lo.min(out.p_zero);
                hi = hi.max(out.p_zero);
                violated |= out.promise_violated;
                let want = if kind == DjKind::Constant { DjVerdict::Constant } else { DjVerdict::Balanced };
                correct += usize::from(out.verdict == want);
            }
            let pass = !violated && correct == a.functions;
            let kind_name = if kind == DjKind::Constant { "constant" } else { "balanced" };
            r.push(
                vec![json!(n), json!(kind_name), json!(a.functions), num(lo), num(hi), json!(correct), json!(EXACT)],
                pass,
                format!("n={n} kind={kind_name}"),
            );
            cell += 1;
        }
    }
    Ok(r)
}

pub fn bv(a: &BvArgs) -> Result<Report> {
    let mut r = Report::new("bv", a, &["n", "secrets", "p_secret_min", "max_deviation", "recovered", "ci99", "pass"]);
    for (cell, &n) in a.n.0.iter().enumerate() {
        if n == 0 || n > 16 {
            return Err(usage("bv needs 1 ≤ n ≤ 16"));
        }
        let mut rng = trial_rng(a.common.seed, cell as u64);
        let indices: Vec<usize> = if a.secrets == 0 {
            (0..1usize << n).collect()
        } else {
            (0..a.secrets).map(|_| rng.gen_range(0..1usize << n)).collect()
        };
        let (mut p_min, mut dev, mut recovered) = (f64::INFINITY, 0.0f64, 0);
        for &idx in &indices {
            let secret = SecretSpec::new(2, digits_of(idx, 2, n))?;
            let dist = bernstein_vazirani_distribution(&secret)?;
            p_min = p_min.min(dist[idx]);
            for (m, p) in dist.iter().enumerate() {
                dev = dev.max((p - if m == idx { 1.0 } else { 0.0 }).abs());
            }
            recovered += usize::from(bernstein_vazirani(&secret, &mut rng)?.success);
        }
        let pass = dev <= 1e-12 && recovered == indices.len();
        r.push(
            vec![json!(n), json!(indices.len()), num(p_min), num(dev), json!(recovered), json!(EXACT)],
            pass,
            format!("n={n}"),
        );
    }
    Ok(r)
}

pub fn lpn(a: &LpnArgs) -> Result<Report> {
    let mut r = Report::new(
        "lpn",
        a,
        &["n", "eta", "secrets", "exact_min", "exact_max", "max_abs_dev", "sampled_runs", "sampled_rate", "ci99", "pass"],
    );
    let mut cell = 0u64;
    for &n in &a.n.0 {
        for &eta in &a.eta.0 {
            let (mut lo, mut hi, mut dev) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
            let (mut runs, mut wins) = (0, 0);
            for i in 0..a.secrets as u64 {
                let mut rng = sub_rng(a.common.seed, cell, i);
                let secret = SecretSpec::random_nonzero(n, 2, &mut rng)?;
                let first = quantum_parity_learn(&secret, eta, &mut rng)?;
                let p = first.exact_success_prob.unwrap_or(f64::NAN);
                lo = lo.min(p);
                hi = hi.max(p);
                dev = dev.max((p - 0.5).abs());
                if a.trials > 0 {
                    wins += usize::from(first.success);
                    for _ in 1..a.trials {
                        wins += usize::from(quantum_parity_learn(&secret, eta, &mut rng)?.success);
                    }
                    runs += a.trials;
                }
            }
            let (rate, ci) = if runs > 0 {
                (num(wins as f64 / runs as f64), ci_cell(&wilson_99(wins, runs)))
            } else {
                (Value::Null, json!(EXACT))
            };
            r.push(
                vec![json!(n), json!(eta), json!(a.secrets), num(lo), num(hi), num(dev), json!(runs), rate, ci],
                dev <= 1e-12,
                format!("n={n} eta={eta}"),
            );
            cell += 1;
        }
    }
    Ok(r)
}

pub fn ebv(a: &EbvArgs) -> Result<Report> {
    let mut r = Report::new(
        "ebv",
        a,
        &[
            "q", "n", "secrets", "phi_over_q", "exact_min", "exact_max", "max_abs_dev", "sampled_runs", "sampled_rate",
            "ci99", "pass",
        ],
    );
    let mut cell = 0u64;
    for &q in &a.q.0 {
        for &n in &a.n.0 {
            let target = totient_ratio(q as u64);
            let (mut lo, mut hi, mut dev) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
            let (mut runs, mut wins) = (0, 0);
            for i in 0..a.secrets as u64 {
                let mut rng = sub_rng(a.common.seed, cell, i);
                let secret = SecretSpec::random(n, q, &mut rng)?;
                let reps = if a.exact { 1 } else { a.trials.max(1) };
                for k in 0..reps {
                    let out = extended_bv(&secret, &mut rng)?;
                    if k == 0 {
                        let p = out.exact_success_prob.unwrap_or(f64::NAN);
                        lo = lo.min(p);
                        hi = hi.max(p);
                        dev = dev.max((p - target).abs());
                    }
                    if !a.exact {
                        wins += usize::from(out.success);
                        runs += 1;
                    }
                }
            }
            let (rate, ci) = if runs > 0 {
                (num(wins as f64 / runs as f64), ci_cell(&wilson_99(wins, runs)))
            } else {
                (Value::Null, json!(EXACT))
            };
            r.push(
                vec![json!(q), json!(n), json!(a.secrets), num(target), num(lo), num(hi), num(dev), json!(runs), rate, ci],
                dev <= EXACT_TOL,
                format!("q={q} n={n}"),
            );
            cell += 1;
        }
    }
    Ok(r)
}

pub fn ebv_lwe(a: &EbvLweArgs) -> Result<Report> {
    let mut r = Report::new(
        "ebv-lwe",
        a,
        &[
            "q", "n", "eta", "dist", "draws", "exact_min", "exact_mean", "lower_bound", "min_margin", "violations",
            "max_closed_form_dev", "ci99", "pass",
        ],
    );
    let mut cell = 0u64;
    for &q in &a.q.0 {
        let mut etas: Vec<u64> = a.eta.0.iter().map(|e| e.resolve(q)).collect();
        etas.dedup();
        for &n in &a.n.0 {
            for &eta in &etas {
                for &dist in &a.dist.0 {
                    let (chi, dist_name) = match dist {
                        Dist::Uniform => (ErrorDistribution::bounded_uniform(eta), "uniform"),
                        Dist::Gaussian => (ErrorDistribution::rounded_gaussian(eta), "gaussian"),
                    };
                    let mut probs = Vec::with_capacity(a.draws);
                    let (mut bound, mut margin, mut violations, mut cf_dev) = (0.0, f64::INFINITY, 0, 0.0f64);
                    for i in 0..a.draws as u64 {
                        let mut rng = sub_rng(a.common.seed, cell, i);
                        let secret = SecretSpec::random(n, q, &mut rng)?;
                        let out = extended_bv_lwe(&secret, &chi, &mut rng)?;
                        let p = out.result.exact_success_prob.unwrap_or(f64::NAN);
                        bound = out.lower_bound;
                        margin = f64::min(margin, p - out.lower_bound);
                        violations += usize::from(p < out.lower_bound);
                        cf_dev = cf_dev.max((p - out.closed_form).abs());
                        probs.push(p);
                    }
                    let lo = probs.iter().cloned().fold(f64::INFINITY, f64::min);
                    r.push(
                        vec![
                            json!(q),
                            json!(n),
                            json!(eta),
                            json!(dist_name),
                            json!(a.draws),
                            num(lo),
                            num(mean(&probs)),
                            num(bound),
                            num(margin),
                            json!(violations),
                            num(cf_dev),
                            json!(EXACT),
                        ],
                        violations == 0 && cf_dev <= EXACT_TOL,
                        format!("q={q} n={n} eta={eta} dist={dist_name}"),
                    );
                    cell += 1;
                }
            }
        }
    }
    Ok(r)
}

fn estimator(e: Estimator) -> KeyEstimator {
    match e {
        Estimator::Consistency => KeyEstimator::Consistency,
        Estimator::CircularMean => KeyEstimator::CircularMean,
        Estimator::PlainMean => KeyEstimator::PlainMean,
    }
}

fn write_transcripts(path: &std::path::Path, reports: &[&IndReport]) -> Result<()> {
    let text: String = reports.iter().map(|r| r.transcripts_jsonl()).collect();
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

pub fn keyrec(a: &KeyrecArgs) -> Result<Report> {
    let mut r = Report::new(
        "keyrec",
        a,
        &["experiment", "n", "q", "eta", "m", "trials", "successes", "rate", "ci99", "threshold", "pass"],
    );
    let scheme = lwe_skes(a.n, a.q, ErrorDistribution::bounded_uniform(a.eta))?;
    let m = match a.m {
        Some(m) => m,
        None => key_recovery_budget(a.n, a.q, a.delta)?,
    };
    let est = estimator(a.estimator);
    let mut recovered = 0;
    for i in 0..a.trials as u64 {
        let mut rng = trial_rng(a.common.seed, i);
        let key = scheme.keygen(&mut rng)?;
        let guess = key_recovery_attack(|c| scheme.dec(&key, c), a.n, a.q, m, est, &mut rng)?;
        recovered += usize::from(guess == key.0);
    }
    let rate = recovered as f64 / a.trials.max(1) as f64;
    let threshold = 1.0 - a.delta;
    let head = |exp: &str| vec![json!(exp), json!(a.n), json!(a.q), json!(a.eta), json!(m)];
    let mut row = head("key-recovery");
    row.extend([
        json!(a.trials),
        json!(recovered),
        num(rate),
        ci_cell(&wilson_99(recovered, a.trials)),
        json!(format!(">= {}", num(threshold))),
    ]);
    r.push(row, rate >= threshold, "key-recovery");
    if a.games > 0 {
        let make = || KeyRecoveryAdversary::new(m, est);
        let cca = run_ind_game(&scheme, make, Mode::Cca1, a.games, a.common.seed)?;
        let cpa = run_ind_game(&scheme, make, Mode::Cpa, a.games, a.common.seed)?;
        for (name, rep, threshold, pass) in [
            ("ind-cca1", &cca, ">= 0.95", cca.win_rate >= 0.95),
            ("ind-cpa", &cpa, "ci99 contains 0.5", cpa.ci99.contains(0.5)),
        ] {
            let mut row = head(name);
            row.extend([json!(rep.trials), json!(rep.wins), num(rep.win_rate), ci_cell(&rep.ci99), json!(threshold)]);
            r.push(row, pass, name);
        }
        if let Some(path) = &a.transcripts {
            write_transcripts(path, &[&cca, &cpa])?;
        }
    }
    Ok(r)
}

fn play<S: Scheme>(scheme: &S, a: &IndGameArgs) -> Result<IndReport> {
    let mode = match a.mode {
        ModeArg::Cpa => Mode::Cpa,
        ModeArg::Cca1 => Mode::Cca1,
    };
    let (trials, seed) = (a.trials, a.common.seed);
    match a.adversary {
        AdversaryKind::Random => run_ind_game(scheme, RandomGuess::<S>::default, mode, trials, seed),
        AdversaryKind::Replay => run_ind_game(scheme, ReplayAdversary::<S>::default, mode, trials, seed),
        AdversaryKind::ChallengeDecryptor => run_ind_game(scheme, ChallengeDecryptor::<S>::default, mode, trials, seed),
        AdversaryKind::KeyRecovery => Err(usage("the key-recovery adversary needs --scheme lwe")),
    }
}

pub fn ind_game(a: &IndGameArgs) -> Result<Report> {
    let mut r = Report::new(
        "ind-game",
        a,
        &["scheme", "adversary", "mode", "trials", "wins", "aborted", "win_rate", "ci99", "expectation", "pass"],
    );
    let rep = match a.scheme {
        SchemeKind::Prf => {
            let bits = a.n.unwrap_or(32);
            play(&prf_scheme(PrfFamily::new(bits, bits)?), a)?
        }
        SchemeKind::Periodized => play(&periodized_prf_scheme(a.n.unwrap_or(8))?, a)?,
        SchemeKind::Lwe => {
            let n = a.n.unwrap_or(8);
            let scheme = lwe_skes(n, a.q, ErrorDistribution::bounded_uniform(a.eta))?;
            if a.adversary == AdversaryKind::KeyRecovery {
                let m = match a.m {
                    Some(m) => m,
                    None => key_recovery_budget(n, a.q, 0.01)?,
                };
                let mode = if a.mode == ModeArg::Cpa { Mode::Cpa } else { Mode::Cca1 };
                run_ind_game(&scheme, || KeyRecoveryAdversary::new(m, KeyEstimator::Consistency), mode, a.trials, a.common.seed)?
            } else {
                play(&scheme, a)?
            }
        }
    };
    let (expectation, pass) = match (a.adversary, a.mode) {
        (AdversaryKind::ChallengeDecryptor, _) => ("all trials aborted", rep.aborted == rep.trials),
        (AdversaryKind::KeyRecovery, ModeArg::Cca1) => ("win_rate >= 0.95", rep.win_rate >= 0.95),
        _ => ("ci99 contains 0.5", rep.ci99.contains(0.5)),
    };
    if let Some(path) = &a.transcripts {
        write_transcripts(path, &[&rep])?;
    }
    r.push(
        vec![
            json!(rep.scheme),
            json!(rep.adversary),
            json!(rep.mode.as_str()),
            json!(rep.trials),
            json!(rep.wins),
            json!(rep.aborted),
            num(rep.win_rate),
            ci_cell(&rep.ci99),
            json!(expectation),
        ],
        pass,
        format!("{} vs {}", rep.scheme, rep.adversary),
    );
    Ok(r)
}

pub fn relabel_classical(a: &RelabelClassicalArgs) -> Result<Report> {
    let mut r = Report::new(
        "relabel-classical",
        a,
        &[
            "n", "m", "t", "capped", "mode", "win_prob", "win_prob_exact", "advantage", "predicted_advantage", "bound",
            "ci99", "pass",
        ],
    );
    let mode = match a.mode {
        RelabelMode::Exhaustive => ClassicalMode::Exhaustive,
        RelabelMode::Sampled => ClassicalMode::Sampled { trials: a.trials },
    };
    let mut cell = 0u64;
    for &n in &a.n.0 {
        for &m in &a.m.0 {
            if n == 0 || n > 24 || m == 0 || m > 32 {
                return Err(usage("relabel-classical needs 1 ≤ n ≤ 24 and 1 ≤ m ≤ 32"));
            }
            let mut rng = trial_rng(a.common.seed, cell);
            let f: Vec<usize> = (0..1usize << n).map(|_| rng.gen_range(0..1usize << m)).collect();
            for &t in &a.t.0 {
                let rep = classical_relabeling(n, m, t, &f, mode, a.common.seed.wrapping_add(cell))?;
                // Exhaustive results are re-checked against the bound in exact arithmetic.
                let pass = match &rep.win_prob_exact {
                    Some(text) => {
                        let exact: Ratio<i128> = text.parse().map_err(|_| usage("unparseable exact fraction"))?;
                        rep.pass && exact - Ratio::new(1, 2) <= Ratio::new(rep.t as i128, 1i128 << n)
                    }
                    None => rep.pass,
                };
                r.push(
                    vec![
                        json!(n),
                        json!(m),
                        json!(rep.t),
                        json!(rep.capped),
                        json!(if rep.win_prob_exact.is_some() { "exhaustive" } else { "sampled" }),
                        num(rep.win_prob),
                        json!(rep.win_prob_exact),
                        num(rep.advantage),
                        num(rep.predicted_advantage),
                        num(rep.bound),
                        rep.ci99.as_ref().map_or(json!(EXACT), ci_cell),
                    ],
                    pass,
                    format!("n={n} m={m} t={t}"),
                );
            }
            cell += 1;
        }
    }
    Ok(r)
}

pub fn relabel_quantum(a: &RelabelQuantumArgs) -> Result<Report> {
    let mut r = Report::new(
        "relabel-quantum",
        a,
        &["n", "m", "mu", "t", "draws", "mean", "max", "bound", "flagged", "ci99", "pass"],
    );
    let mut cell = 0u64;
    for &mu in &a.mu.0 {
        for &t in &a.t.0 {
            let cfg = RelabelConfig { n: a.n, m: a.m, mu, t, advice_queries: a.advice_queries };
            let rep = quantum_relabeling_tracedist(&cfg, a.draws, a.common.seed.wrapping_add(cell))?;
            let var = rep.distances.iter().map(|d| (d - rep.mean).powi(2)).sum::<f64>() / rep.draws.max(2).saturating_sub(1) as f64;
            let half = Z_99 * (var / rep.draws as f64).sqrt();
            r.push(
                vec![
                    json!(a.n),
                    json!(a.m),
                    json!(mu),
                    json!(t),
                    json!(rep.draws),
                    num(rep.mean),
                    num(rep.max),
                    num(rep.bound),
                    json!(rep.flagged.len()),
                    json!(format!("[{}, {}]", num(rep.mean - half), num(rep.mean + half))),
                ],
                rep.pass,
                format!("mu={mu} t={t}"),
            );
            cell += 1;
        }
    }
    Ok(r)
}

pub fn qft_check(a: &QftCheckArgs) -> Result<Report> {
    let mut r = Report::new(
        "qft-check",
        a,
        &["q", "unitarity_dev", "orthogonality_dev", "shift_dev", "ci99", "pass"],
    );
    for &q in &a.q.0 {
        if q < 2 {
            return Err(usage("qft-check needs q ≥ 2"));
        }
        let unitary = qft_matrix::<f64>(q, false).unitarity_deviation();
        let ortho = check_root_orthogonality(q)?.max_deviation;
        let shift = check_shift_diagonality(q)?.max_deviation();
        let pass = unitary <= a.tol && ortho <= a.tol && shift <= a.tol;
        r.push(vec![json!(q), num(unitary), num(ortho), num(shift), json!(EXACT)], pass, format!("q={q}"));
    }
    Ok(r)
}

pub fn channels(a: &ChannelsArgs) -> Result<Report> {
    let mut r = Report::new(
        "channels",
        a,
        &[
            "channel", "p", "samples", "max_trace_error", "max_hermiticity_error", "min_eigenvalue", "invalid", "ci99",
            "pass",
        ],
    );
    let kinds: [fn(f64) -> Channel; 4] =
        [Channel::BitFlip, Channel::PhaseFlip, Channel::AmplitudeDamping, Channel::Depolarizing];
    let mut cell = 0u64;
    for make in kinds {
        for &p in &a.p.0 {
            let ch = make(p);
            let (mut tr, mut herm, mut eig, mut invalid) = (0.0f64, 0.0f64, f64::INFINITY, 0);
            for i in 0..a.samples as u64 {
                let mut rng = sub_rng(a.common.seed, cell, i);
                let rho = Density::random(2, 1, 1 + (i as usize % 2), &mut rng)?;
                let out = channel_apply(&rho, ch)?;
                let v = out.validity();
                tr = tr.max(v.trace_error);
                herm = herm.max(v.hermiticity_error);
                eig = eig.min(v.min_eigenvalue);
                invalid += usize::from(!out.is_valid());
            }
            r.push(
                vec![
                    json!(ch.name()),
                    json!(p),
                    json!(a.samples),
                    num(tr),
                    num(herm),
                    num(eig),
                    json!(invalid),
                    json!(EXACT),
                ],
                invalid == 0,
                format!("{} p={p}", ch.name()),
            );
            cell += 1;
        }
    }
    Ok(r)
}

pub fn code3(a: &Code3Args) -> Result<Report> {
    let mut r = Report::new(
        "code3",
        a,
        &["experiment", "parameter", "trials", "observed", "expected", "ci99", "pass"],
    );
    let flip = UnitaryOp::single(0, gates::pauli_x())?;
    let cases: [(&str, &[usize]); 4] =
        [("qubit 0", &[0]), ("qubit 1", &[1]), ("qubit 2", &[2]), ("qubits 0 and 1", &[0, 1])];
    for (cell, (label, errors)) in cases.iter().enumerate() {
        // A single flip is corrected; a double flip decodes to X|ψ⟩.
        let double = errors.len() == 2;
        let want_syndrome = if double { 3 } else { errors[0] + 1 };
        let (mut fid, mut syndromes_ok) = (f64::INFINITY, true);
        for i in 0..a.inputs as u64 {
            let mut rng = sub_rng(a.common.seed, cell as u64, i);
            let psi = State::random(2, 1, &mut rng)?;
            let out = bitflip_code_cycle(&psi, errors, &mut rng)?;
            let target = if double { psi.apply_unitary(&flip)? } else { psi };
            syndromes_ok &= out.syndrome == want_syndrome;
            fid = fid.min(out.recovered.inner(&target)?.norm_sqr());
        }
        let exp = if double { "double-flip" } else { "single-flip" };
        let expected = if double { "X|psi>" } else { "|psi>" };
        r.push(
            vec![json!(exp), json!(label), json!(a.inputs), num(fid), json!(expected), json!(EXACT)],
            syndromes_ok && fid >= 1.0 - EXACT_TOL,
            format!("{exp} {label}"),
        );
    }
    for (k, &p) in a.p.0.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(usage(format!("flip rate {p} outside [0, 1]")));
        }
        let hits = repetition_monte_carlo(p, a.trials, &mut trial_rng(a.common.seed, (cases.len() + k) as u64));
        let want = repetition_success_prob(p);
        let got = hits as f64 / a.trials.max(1) as f64;
        let sigma = (want * (1.0 - want) / a.trials.max(1) as f64).sqrt();
        r.push(
            vec![
                json!("repetition"),
                json!(format!("p = {p}")),
                json!(a.trials),
                num(got),
                num(want),
                ci_cell(&wilson_99(hits, a.trials)),
            ],
            (got - want).abs() <= 3.0 * sigma,
            format!("repetition p={p}"),
        );
    }
    Ok(r)
}

pub fn numbers(a: &NumbersArgs) -> Result<Report> {
    let mut r = Report::new("numbers", a, &["check", "range", "count", "failures", "min_gap", "ci99", "pass"]);
    let (mut failures, mut gap) = (0, f64::INFINITY);
    for &q in &a.q.0 {
        if q < 3 {
            return Err(usage("the totient lower bound needs q ≥ 3"));
        }
        let g = totient_ratio(q as u64) - rosser_schoenfeld_bound(q as u64);
        gap = gap.min(g);
        failures += usize::from(g <= 0.0);
    }
    r.push(
        vec![json!("rosser-schoenfeld"), json!(a.q.text()), json!(a.q.0.len()), json!(failures), num(gap), json!(EXACT)],
        failures == 0,
        "rosser-schoenfeld",
    );
    let mismatches = (1..=a.brute_max)
        .filter(|&q| {
            let brute = (1..=q).filter(|&k| gcd(k, q) == 1).count() as u64;
            brute != totient(q) || euler_product(q) != Ratio::new(brute, q)
        })
        .count();
    r.push(
        vec![
            json!("totient-brute-force"),
            json!(format!("1..{}", a.brute_max)),
            json!(a.brute_max),
            json!(mismatches),
            Value::Null,
            json!(EXACT),
        ],
        mismatches == 0,
        "totient-brute-force",
    );
    Ok(r)
}
