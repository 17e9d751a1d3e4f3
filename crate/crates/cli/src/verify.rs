//! Oracle cross-checks and timings for `verify` and `bench`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use numfac::factorization::{brute_force_factorizations, factorizations_up_to, length_sets_up_to, max_length};
use numfac::omega::{bullets_brute_force, bullets_via_apery, omega_table, Bullet, OmegaScan};
use numfac::NumericalMonoid;
use serde_json::json;

use crate::error::CliError;
use crate::output::{cells, header, Report};

struct Tally {
    name: &'static str,
    checked: u64,
    failures: u64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: 0,
        }
    }

    fn check(&mut self, ok: bool) {
        self.checked += 1;
        self.failures += u64::from(!ok);
    }
}

fn rows(s: &NumericalMonoid, n: i64) -> Result<Vec<Tally>, CliError> {
    let f = s.frobenius();
    let n1 = s.multiplicity();

    let mut membership = Tally::new("membership");
    let mut factorizations = Tally::new("factorizations");
    let mut lengths = Tally::new("lengths");
    let mut oracle_lengths = Vec::new();
    for m in 0..=n {
        let oracle = brute_force_factorizations(s, m, None)?;
        membership.check(s.contains(m) == !oracle.is_empty());
        oracle_lengths.push(oracle.lengths());
    }
    factorizations_up_to(s, n, |m, z| {
        let oracle: BTreeSet<Vec<u32>> = brute_force_factorizations(s, m, None)
            .unwrap()
            .iter()
            .map(<[u32]>::to_vec)
            .collect();
        let dynamic: BTreeSet<Vec<u32>> = z.iter().map(<[u32]>::to_vec).collect();
        factorizations.check(dynamic.len() == z.len() && dynamic == oracle);
    })?;
    length_sets_up_to(s, n, |m, l| {
        let mut expected = oracle_lengths[m as usize].clone();
        expected.sort_unstable();
        expected.dedup();
        lengths.check(l.to_vec() == expected);
    })?;

    let mut omega = Tally::new("omega");
    let mut bullets = Tally::new("bullets");
    let mut antichain = Tally::new("bullet-antichain");
    let mut sandwich = Tally::new("omega-sandwich");
    let mut small = Tally::new("omega-small-values");
    let mut store = Tally::new("bullet-store-bound");

    let table = omega_table(s, n.max(0))?;
    for x in -f..=n {
        let brute = bullets_brute_force(s, x)?;
        let apery = bullets_via_apery(s, x)?;
        let longest = |bs: &[Bullet]| bs.iter().map(Bullet::length).max();
        let dp = table.get(x);
        omega.check(dp == longest(&brute) && dp == longest(&apery));
        let as_set = |bs: &[Bullet]| bs.iter().map(|b| b.exponents.clone()).collect::<BTreeSet<_>>();
        bullets.check(as_set(&brute) == as_set(&apery));
        antichain.check(brute.iter().all(|a| {
            brute
                .iter()
                .all(|b| a == b || !a.exponents.iter().zip(&b.exponents).all(|(p, q)| p <= q))
        }));
    }
    for m in (1..=n).filter(|&m| s.contains(m)) {
        let big_m = max_length(s, m)? as i64;
        let w = table.get(m).unwrap() as i64;
        sandwich.check(big_m * n1 <= m && m <= w * n1);
    }
    let pf = s.pseudo_frobenius();
    for x in -f - 50..=0 {
        let w = table.get(x).unwrap();
        small.check((w == 0) == s.contains(-x) && (w == 1) == pf.contains(&-x));
    }
    let cap: i64 = s.generators().iter().sum();
    let mut scan = OmegaScan::new(s)?;
    while scan.next_element() <= n {
        let step = scan.advance()?;
        store.check(step.distinct_values() as i64 <= cap);
    }

    Ok(vec![
        membership,
        factorizations,
        lengths,
        omega,
        bullets,
        antichain,
        sandwich,
        small,
        store,
    ])
}

/// Checks every dynamic algorithm against its brute-force oracle on `[0, n]`
/// (ω and bullets on `[-F(S), n]`).
pub fn verify(s: &NumericalMonoid, n: i64) -> Result<(Report, Option<String>), CliError> {
    if n < 0 {
        return Err(CliError::Usage(format!("verify range {n} is negative")));
    }
    let tallies = rows(s, n)?;
    let failures: u64 = tallies.iter().map(|t| t.failures).sum();
    let report = Report {
        payload: json!({
            "n": n,
            "passed": failures == 0,
            "properties": tallies
                .iter()
                .map(|t| json!({ "name": t.name, "checked": t.checked, "failures": t.failures }))
                .collect::<Vec<_>>(),
        }),
        plain: tallies
            .iter()
            .map(|t| {
                let verdict = if t.failures == 0 { "PASS" } else { "FAIL" };
                format!("{verdict} {} ({} checked, {} failed)", t.name, t.checked, t.failures)
            })
            .collect(),
        header: header(&["property", "checked", "failures"]),
        rows: tallies
            .iter()
            .map(|t| {
                let mut row = vec![t.name.to_string()];
                row.extend(cells(&[t.checked, t.failures]));
                row
            })
            .collect(),
    };
    let failure = (failures > 0).then(|| format!("{failures} property checks failed"));
    Ok((report, failure))
}

fn timed<T>(f: impl FnOnce() -> Result<T, CliError>) -> Result<Duration, CliError> {
    let t = Instant::now();
    f()?;
    Ok(t.elapsed())
}

/// Times the dynamic algorithms against per-element brute force on `[0, n]`.
/// Fails if the dynamic side is the slower one.
pub fn bench(s: &NumericalMonoid, n: i64) -> Result<(Report, Option<String>), CliError> {
    if n < 0 {
        return Err(CliError::Usage(format!("bench range {n} is negative")));
    }
    let tasks = [
        (
            "factorizations",
            timed(|| Ok(factorizations_up_to(s, n, |_, _| {})?))?,
            timed(|| {
                for m in 0..=n {
                    brute_force_factorizations(s, m, None)?;
                }
                Ok(())
            })?,
        ),
        (
            "omega",
            timed(|| Ok(omega_table(s, n)?))?,
            timed(|| {
                for x in 0..=n {
                    bullets_brute_force(s, x)?;
                }
                Ok(())
            })?,
        ),
    ];
    let micros = |d: Duration| d.as_micros() as u64;
    let slower: Vec<&str> = tasks
        .iter()
        .filter(|(_, dp, naive)| dp > naive)
        .map(|(name, ..)| *name)
        .collect();
    let report = Report {
        payload: json!({
            "n": n,
            "ordering_holds": slower.is_empty(),
            "tasks": tasks
                .iter()
                .map(|(name, dp, naive)| json!({ "name": name, "dynamic_us": micros(*dp), "naive_us": micros(*naive) }))
                .collect::<Vec<_>>(),
        }),
        plain: tasks
            .iter()
            .map(|(name, dp, naive)| format!("{name}: dynamic {} us, naive {} us", micros(*dp), micros(*naive)))
            .collect(),
        header: header(&["task", "dynamic_us", "naive_us"]),
        rows: tasks
            .iter()
            .map(|(name, dp, naive)| {
                let mut row = vec![name.to_string()];
                row.extend(cells(&[micros(*dp), micros(*naive)]));
                row
            })
            .collect(),
    };
    let failure = (!slower.is_empty()).then(|| format!("dynamic slower than naive for {}", slower.join(", ")));
    Ok((report, failure))
}
