use quditbench::games::{
    key_recovery_attack, key_recovery_budget, run_ind_game, wilson_99, ChallengeDecryptor, GameTranscript, KeyEstimator,
    KeyRecoveryAdversary, Mode, RandomGuess, ReplayAdversary,
};
use quditbench::modmath::ErrorDistribution;
use quditbench::rng::trial_rng;
use quditbench::schemes::{lwe_skes, prf_scheme, LweSkes, PrfFamily, Scheme};

fn within_3_sigma(wins: usize, trials: usize) -> bool {
    let p = wins as f64 / trials as f64;
    (p - 0.5).abs() <= 3.0 * (0.25 / trials as f64).sqrt()
}

fn lwe() -> LweSkes {
    lwe_skes(8, 23, ErrorDistribution::bounded_uniform(1)).unwrap()
}

#[test]
fn random_guess_wins_half() {
    let scheme = prf_scheme(PrfFamily::new(16, 16).unwrap());
    let r = run_ind_game(&scheme, RandomGuess::default, Mode::Cpa, 10_000, 1).unwrap();
    assert!(within_3_sigma(r.wins, r.trials), "{}", r.win_rate);
    assert_eq!(r.aborted, 0);
}

#[test]
fn replaying_the_challenge_gains_nothing() {
    let scheme = prf_scheme(PrfFamily::new(32, 32).unwrap());
    let r = run_ind_game(&scheme, ReplayAdversary::default, Mode::Cpa, 10_000, 2).unwrap();
    assert!(within_3_sigma(r.wins, r.trials), "{}", r.win_rate);
    let t = &r.transcripts[0];
    assert_eq!(t.queries.len(), 1);
    assert_eq!(t.queries[0].count, 2);
}

#[test]
fn key_recovery_separates_cca1_from_cpa() {
    let scheme = lwe();
    let m = key_recovery_budget(8, 23, 0.01).unwrap();
    let make = || KeyRecoveryAdversary::new(m, KeyEstimator::Consistency);
    let cca = run_ind_game(&scheme, make, Mode::Cca1, 200, 3).unwrap();
    assert!(cca.win_rate >= 0.95, "{}", cca.win_rate);
    let cpa = run_ind_game(&scheme, make, Mode::Cpa, 2000, 3).unwrap();
    assert!(within_3_sigma(cpa.wins, cpa.trials), "{}", cpa.win_rate);
    assert!(cpa.transcripts.iter().all(|t| t.queries.is_empty()));
}

#[test]
fn post_challenge_decryption_aborts() {
    let scheme = lwe();
    let r = run_ind_game(&scheme, ChallengeDecryptor::default, Mode::Cca1, 100, 4).unwrap();
    assert_eq!(r.aborted, 100);
    assert_eq!(r.wins, 0);
    for t in &r.transcripts {
        let last = t.queries.last().unwrap();
        assert!(last.denied && t.guess.is_none() && t.challenge.is_some());
    }
}

#[test]
fn transcripts_reproduce_and_parse() {
    let scheme = lwe();
    let make = || KeyRecoveryAdversary::new(32, KeyEstimator::Consistency);
    let a = run_ind_game(&scheme, make, Mode::Cca1, 20, 9).unwrap();
    let b = run_ind_game(&scheme, make, Mode::Cca1, 20, 9).unwrap();
    assert_eq!(a.transcripts_jsonl(), b.transcripts_jsonl());
    for (line, t) in a.transcripts_jsonl().lines().zip(&a.transcripts) {
        let back: GameTranscript = serde_json::from_str(line).unwrap();
        assert_eq!(&back, t);
        assert_eq!(back.win, back.guess == back.challenge.as_ref().map(|c| c.b));
    }
    let c = run_ind_game(&scheme, make, Mode::Cca1, 20, 10).unwrap();
    assert_ne!(a.transcripts_jsonl(), c.transcripts_jsonl());
}

#[test]
fn recovery_rate_is_monotone_in_budget() {
    let scheme = lwe();
    let budgets = [8, 32, 128, key_recovery_budget(8, 23, 0.01).unwrap()];
    let runs = 100;
    let rates: Vec<_> = budgets
        .iter()
        .map(|&m| {
            let ok = (0..runs)
                .filter(|&s| {
                    let mut rng = trial_rng(100 + s, 0);
                    let k = scheme.keygen(&mut rng).unwrap();
                    let got = key_recovery_attack(|c| scheme.dec(&k, c), 8, 23, m, KeyEstimator::Consistency, &mut rng)
                        .unwrap();
                    got == k.0
                })
                .count();
            wilson_99(ok, runs as usize)
        })
        .collect();
    for w in rates.windows(2) {
        assert!(w[1].high >= w[0].low, "{rates:?}");
    }
    assert!(rates[3].low > 0.9);
}
