use std::io::{self, BufWriter};
use std::time::Instant;

use numfac::delta::{self, delta_periodicity, delta_scan_limit, deltas_up_to, DeltaSet};
use numfac::factorization::{factorizations, factorizations_up_to, length_set, Factorization};
use numfac::omega::{
    self, bullets_brute_force, bullets_via_apery, dynamic_bullets, quasilinear_model_with_table, Bullet, Domain,
    OmegaScan, Ratio,
};
use numfac::NumericalMonoid;
use serde_json::{json, Map, Value};

use crate::args::{Command, DomainArg, Method, MonoidArgs, Plot};
use crate::error::CliError;
use crate::output::{cells, header, spaced, Context, Emitter, Format, Record, Report};
use crate::verify;

type Out = BufWriter<io::StdoutLock<'static>>;

pub fn run(command: Command) -> Result<(), CliError> {
    let out: Out = BufWriter::new(io::stdout().lock());
    match command {
        Command::Info { monoid } => report(&monoid, "info", out, info),
        Command::Contains { monoid, n } => report(&monoid, "contains", out, |s| contains(s, n)),
        Command::Apery { monoid, n, subset } => report(&monoid, "apery", out, |s| apery(s, n, subset.as_deref())),
        Command::PseudoFrobenius { monoid } => report(&monoid, "pseudo-frobenius", out, pseudo_frobenius),
        Command::Factorizations { monoid, n, stream } => streamed(&monoid, "factorizations", out, |ctx, out| {
            factorizations_of(ctx, out, n, stream)
        }),
        Command::FactorizationsUpTo { monoid, n, stream } => {
            streamed(&monoid, "factorizations-up-to", out, |ctx, out| {
                factorizations_below(ctx, out, n, stream)
            })
        }
        Command::Lengths { monoid, n } => report(&monoid, "lengths", out, |s| lengths(s, n)),
        Command::Delta { monoid, n } => report(&monoid, "delta", out, |s| delta_of(s, n)),
        Command::DeltaSet { monoid, bound } => report(&monoid, "delta-set", out, |s| delta_set(s, bound)),
        Command::DeltaPeriodicity { monoid, horizon, bound } => {
            report(&monoid, "delta-periodicity", out, |s| periodicity(s, horizon, bound))
        }
        Command::Omega { monoid, n } => report(&monoid, "omega", out, |s| omega_of(s, n)),
        Command::OmegaUpTo {
            monoid,
            n,
            domain,
            stream,
        } => streamed(&monoid, "omega-up-to", out, |ctx, out| {
            omega_below(ctx, out, n, domain, stream)
        }),
        Command::Bullets { monoid, n, method } => report(&monoid, "bullets", out, |s| bullets(s, n, method)),
        Command::Quasilinear { monoid } => report(&monoid, "quasilinear", out, quasilinear),
        Command::Dissonance { monoid, domain } => report(&monoid, "dissonance", out, |s| dissonance(s, domain)),
        Command::Plotdata {
            monoid,
            plot,
            horizon,
            stream,
        } => streamed(&monoid, "plotdata", out, |ctx, out| {
            plotdata(ctx, out, plot, horizon, stream)
        }),
        Command::Verify { monoid, n } => checked(&monoid, "verify", out, |s| verify::verify(s, n)),
        Command::Bench { monoid, n } => checked(&monoid, "bench", out, |s| verify::bench(s, n)),
    }
}

fn parse_generators(raw: &str) -> Result<Vec<u64>, CliError> {
    raw.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("generator {t:?} is not a non-negative integer")))
        })
        .collect()
}

fn build(args: &MonoidArgs) -> Result<NumericalMonoid, CliError> {
    Ok(NumericalMonoid::new(&parse_generators(&args.gens)?)?)
}

fn report<F>(args: &MonoidArgs, command: &'static str, out: Out, compute: F) -> Result<(), CliError>
where
    F: FnOnce(&NumericalMonoid) -> Result<Report, CliError>,
{
    checked(args, command, out, |s| compute(s).map(|r| (r, None)))
}

/// Like [`report`], but the computation may also flag a failure, which is
/// turned into a non-zero exit after the report has been written.
fn checked<F>(args: &MonoidArgs, command: &'static str, out: Out, compute: F) -> Result<(), CliError>
where
    F: FnOnce(&NumericalMonoid) -> Result<(Report, Option<String>), CliError>,
{
    let s = build(args)?;
    let ctx = Context {
        monoid: &s,
        command,
        format: args.format.unwrap_or(Format::Plain),
        started: Instant::now(),
    };
    let (report, failure) = compute(&s)?;
    report.write(&ctx, out)?;
    failure.map_or(Ok(()), |msg| Err(CliError::Failed(msg)))
}

fn streamed<F>(args: &MonoidArgs, command: &'static str, out: Out, compute: F) -> Result<(), CliError>
where
    F: FnOnce(&Context<'_>, Out) -> Result<(), CliError>,
{
    let s = build(args)?;
    let default = if command == "plotdata" {
        Format::Csv
    } else {
        Format::Plain
    };
    let ctx = Context {
        monoid: &s,
        command,
        format: args.format.unwrap_or(default),
        started: Instant::now(),
    };
    compute(&ctx, out)
}

fn object(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(map) => map,
        _ => unreachable!("json! object literal"),
    }
}

fn generator_header(s: &NumericalMonoid) -> Vec<String> {
    s.generators().iter().map(|g| format!("g{g}")).collect()
}

fn info(s: &NumericalMonoid) -> Result<Report, CliError> {
    let pf = s.pseudo_frobenius();
    let genus = s.gaps().len();
    let redundant = s.redundant_generators();
    let payload = json!({
        "generators": s.generators(),
        "redundant_generators": redundant,
        "multiplicity": s.multiplicity(),
        "embedding_dimension": s.k(),
        "frobenius": s.frobenius(),
        "genus": genus,
        "pseudo_frobenius": pf,
        "type": pf.len(),
    });
    let plain = vec![
        format!("generators: {}", spaced(s.generators())),
        format!(
            "redundant generators: {}",
            if redundant.is_empty() {
                "none".into()
            } else {
                spaced(redundant)
            }
        ),
        format!("multiplicity: {}", s.multiplicity()),
        format!("embedding dimension: {}", s.k()),
        format!("Frobenius number: {}", s.frobenius()),
        format!("genus: {genus}"),
        format!("pseudo-Frobenius numbers: {}", spaced(&pf)),
        format!("type: {}", pf.len()),
    ];
    Ok(Report {
        payload,
        plain,
        header: header(&["multiplicity", "embedding_dimension", "frobenius", "genus", "type"]),
        rows: vec![cells(&[
            s.multiplicity(),
            s.k() as i64,
            s.frobenius(),
            genus as i64,
            pf.len() as i64,
        ])],
    })
}

fn contains(s: &NumericalMonoid, n: i64) -> Result<Report, CliError> {
    let member = s.contains(n);
    Ok(Report {
        payload: json!({ "n": n, "contains": member }),
        plain: vec![member.to_string()],
        header: header(&["n", "contains"]),
        rows: vec![cells(&[n, i64::from(member)])],
    })
}

fn apery(s: &NumericalMonoid, base: Option<i64>, subset: Option<&[i64]>) -> Result<Report, CliError> {
    let (payload, elements) = match subset {
        Some(subset) => {
            let elements = s.apery_intersection(subset)?;
            (json!({ "subset": subset, "elements": elements }), elements)
        }
        None => {
            let set = s.apery_set(base.unwrap_or(s.multiplicity()))?;
            (json!({ "base": set.base, "elements": set.elements }), set.elements)
        }
    };
    Ok(Report {
        payload,
        plain: vec![spaced(&elements)],
        header: header(&["element"]),
        rows: elements.iter().map(|e| vec![e.to_string()]).collect(),
    })
}

fn pseudo_frobenius(s: &NumericalMonoid) -> Result<Report, CliError> {
    let pf = s.pseudo_frobenius();
    Ok(Report {
        payload: json!({ "pseudo_frobenius": pf, "type": pf.len() }),
        plain: vec![spaced(&pf)],
        header: header(&["pseudo_frobenius"]),
        rows: pf.iter().map(|p| vec![p.to_string()]).collect(),
    })
}

struct Factored<'a>(&'a [u32]);

impl Record for Factored<'_> {
    fn json(&self) -> Value {
        json!(self.0)
    }
    fn csv(&self) -> Vec<Vec<String>> {
        vec![cells(self.0)]
    }
    fn plain(&self) -> String {
        Factorization(self.0.to_vec()).to_string()
    }
}

fn factorizations_of(ctx: &Context<'_>, out: Out, n: i64, stream: bool) -> Result<(), CliError> {
    let z = factorizations(ctx.monoid, n)?;
    let mut emitter = Emitter::new(ctx, out, "factorizations", generator_header(ctx.monoid), stream)?;
    for f in z.sorted_desc() {
        emitter.push(&Factored(f.exponents()))?;
    }
    emitter.finish(object(json!({ "n": n })))?;
    Ok(())
}

struct Element<'a> {
    n: i64,
    factorizations: Vec<&'a [u32]>,
}

impl Record for Element<'_> {
    fn json(&self) -> Value {
        json!({ "n": self.n, "factorizations": self.factorizations })
    }
    fn csv(&self) -> Vec<Vec<String>> {
        self.factorizations
            .iter()
            .map(|f| std::iter::once(self.n.to_string()).chain(cells(f)).collect())
            .collect()
    }
    fn plain(&self) -> String {
        let listed: Vec<String> = self
            .factorizations
            .iter()
            .map(|f| Factorization(f.to_vec()).to_string())
            .collect();
        format!("{}: {}", self.n, listed.join(" "))
    }
}

fn factorizations_below(ctx: &Context<'_>, out: Out, n: i64, stream: bool) -> Result<(), CliError> {
    let mut head = header(&["n"]);
    head.extend(generator_header(ctx.monoid));
    let mut emitter = Emitter::new(ctx, out, "elements", head, stream)?;
    let mut failure = None;
    factorizations_up_to(ctx.monoid, n, |m, z| {
        if failure.is_none() {
            let record = Element {
                n: m,
                factorizations: z.iter().collect(),
            };
            failure = emitter.push(&record).err();
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    emitter.finish(object(json!({ "n": n })))?;
    Ok(())
}

fn lengths(s: &NumericalMonoid, n: i64) -> Result<Report, CliError> {
    let l = length_set(s, n)?.to_vec();
    Ok(Report {
        payload: json!({ "n": n, "lengths": l }),
        plain: vec![spaced(&l)],
        header: header(&["length"]),
        rows: l.iter().map(|x| vec![x.to_string()]).collect(),
    })
}

fn delta_of(s: &NumericalMonoid, n: i64) -> Result<Report, CliError> {
    let d = delta::delta_of_lengths(&length_set(s, n)?);
    Ok(Report {
        payload: json!({ "n": n, "delta": d.gaps() }),
        plain: vec![spaced(d.gaps())],
        header: header(&["d"]),
        rows: d.gaps().iter().map(|x| vec![x.to_string()]).collect(),
    })
}

fn delta_set(s: &NumericalMonoid, bound: Option<i64>) -> Result<Report, CliError> {
    let d = delta::delta_set(s, bound)?;
    Ok(Report {
        payload: json!({ "delta_set": d.gaps() }),
        plain: vec![spaced(d.gaps())],
        header: header(&["d"]),
        rows: d.gaps().iter().map(|x| vec![x.to_string()]).collect(),
    })
}

fn periodicity(s: &NumericalMonoid, horizon: Option<i64>, bound: Option<i64>) -> Result<Report, CliError> {
    let horizon = match horizon {
        Some(h) => h,
        None => delta_scan_limit(s, bound)?
            .checked_add(s.period_hint())
            .ok_or(numfac::Error::Overflow {
                context: "default horizon",
            })?,
    };
    let r = delta_periodicity(s, horizon)?;
    Ok(Report {
        payload: json!({
            "dissonance_start": r.dissonance_start,
            "period": r.period,
            "verified_up_to": r.verified_up_to,
        }),
        plain: vec![
            format!("dissonance start: {}", r.dissonance_start),
            format!("period: {}", r.period),
            format!("verified up to: {}", r.verified_up_to),
        ],
        header: header(&["dissonance_start", "period", "verified_up_to"]),
        rows: vec![cells(&[r.dissonance_start, r.period, r.verified_up_to])],
    })
}

fn omega_of(s: &NumericalMonoid, n: i64) -> Result<Report, CliError> {
    let w = omega::omega(s, n)?;
    Ok(Report {
        payload: json!({ "n": n, "omega": w }),
        plain: vec![w.to_string()],
        header: header(&["n", "omega"]),
        rows: vec![cells(&[n, w as i64])],
    })
}

struct OmegaValue {
    n: i64,
    omega: u64,
}

impl Record for OmegaValue {
    fn json(&self) -> Value {
        json!({ "n": self.n, "omega": self.omega })
    }
    fn csv(&self) -> Vec<Vec<String>> {
        vec![cells(&[self.n, self.omega as i64])]
    }
    fn plain(&self) -> String {
        format!("{} {}", self.n, self.omega)
    }
}

fn domain_name(domain: DomainArg) -> &'static str {
    match domain {
        DomainArg::Monoid => "monoid",
        DomainArg::Quotient => "quotient",
    }
}

fn omega_below(ctx: &Context<'_>, out: Out, n: i64, domain: DomainArg, stream: bool) -> Result<(), CliError> {
    let s = ctx.monoid;
    let mut emitter = Emitter::new(ctx, out, "values", header(&["n", "omega"]), stream)?;
    let mut scan = OmegaScan::new(s)?;
    while scan.next_element() <= n {
        let step = scan.advance()?;
        let keep = match domain {
            DomainArg::Monoid => s.contains(step.element),
            DomainArg::Quotient => true,
        };
        if keep {
            let record = OmegaValue {
                n: step.element,
                omega: step.omega,
            };
            emitter.push(&record)?;
        }
    }
    emitter.finish(object(json!({ "n": n, "domain": domain_name(domain) })))?;
    Ok(())
}

fn bullets(s: &NumericalMonoid, x: i64, method: Method) -> Result<Report, CliError> {
    if method == Method::Dp {
        let found = dynamic_bullets(s, x)?;
        let omega = found.iter().map(|b| b.length).max().unwrap_or(0);
        return Ok(Report {
            payload: json!({
                "n": x,
                "method": "dp",
                "omega": omega,
                "bullets": found.iter().map(|b| json!({ "value": b.value, "length": b.length })).collect::<Vec<_>>(),
            }),
            plain: found.iter().map(|b| format!("{} {}", b.value, b.length)).collect(),
            header: header(&["value", "length"]),
            rows: found.iter().map(|b| cells(&[b.value, b.length as i64])).collect(),
        });
    }

    let (name, mut found) = match method {
        Method::Apery => ("apery", bullets_via_apery(s, x)?),
        _ => ("brute", bullets_brute_force(s, x)?),
    };
    found.sort_by(|a, b| b.exponents.cmp(&a.exponents));
    let omega = found.iter().map(Bullet::length).max().unwrap_or(0);
    let mut head = generator_header(s);
    head.extend(header(&["value", "length"]));
    Ok(Report {
        payload: json!({
            "n": x,
            "method": name,
            "omega": omega,
            "bullets": found
                .iter()
                .map(|b| json!({ "exponents": b.exponents, "value": b.value(s), "length": b.length() }))
                .collect::<Vec<_>>(),
        }),
        plain: found
            .iter()
            .map(|b| format!("{} {} {}", Factorization(b.exponents.clone()), b.value(s), b.length()))
            .collect(),
        header: head,
        rows: found
            .iter()
            .map(|b| {
                let mut row = cells(&b.exponents);
                row.extend(cells(&[b.value(s), b.length() as i64]));
                row
            })
            .collect(),
    })
}

fn fraction(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn quasilinear(s: &NumericalMonoid) -> Result<Report, CliError> {
    let (model, _) = quasilinear_model_with_table(s)?;
    let offsets: Vec<String> = model.offsets.iter().map(fraction).collect();
    let mut plain = vec![
        format!("threshold: {}", model.threshold),
        format!("dissonance: {}", model.dissonance),
        format!("quotient dissonance: {}", model.quotient_dissonance),
        format!(
            "omega(n) = n/{} + a(n mod {}) for n > {}",
            model.n1, model.n1, model.threshold
        ),
    ];
    plain.extend(offsets.iter().enumerate().map(|(r, a)| format!("a({r}) = {a}")));
    Ok(Report {
        payload: json!({
            "multiplicity": model.n1,
            "threshold": model.threshold,
            "dissonance": model.dissonance,
            "quotient_dissonance": model.quotient_dissonance,
            "offsets": offsets,
        }),
        plain,
        header: header(&[
            "threshold",
            "dissonance",
            "quotient_dissonance",
            "residue",
            "offset_numerator",
            "offset_denominator",
        ]),
        rows: model
            .offsets
            .iter()
            .enumerate()
            .map(|(r, a)| {
                cells(&[
                    model.threshold,
                    model.dissonance,
                    model.quotient_dissonance,
                    r as i64,
                    *a.numer(),
                    *a.denom(),
                ])
            })
            .collect(),
    })
}

fn dissonance(s: &NumericalMonoid, domain: DomainArg) -> Result<Report, CliError> {
    let (model, table) = quasilinear_model_with_table(s)?;
    let d = match domain {
        DomainArg::Monoid => omega::dissonance(s, &table, Domain::Monoid),
        DomainArg::Quotient => omega::dissonance(s, &table, Domain::Quotient),
    };
    Ok(Report {
        payload: json!({ "domain": domain_name(domain), "dissonance": d, "threshold": model.threshold }),
        plain: vec![d.to_string()],
        header: header(&["threshold", "dissonance"]),
        rows: vec![cells(&[model.threshold, d])],
    })
}

struct DeltaPoint {
    n: i64,
    d: u64,
}

impl Record for DeltaPoint {
    fn json(&self) -> Value {
        json!({ "n": self.n, "d": self.d })
    }
    fn csv(&self) -> Vec<Vec<String>> {
        vec![cells(&[self.n, self.d as i64])]
    }
    fn plain(&self) -> String {
        format!("{} {}", self.n, self.d)
    }
}

struct OmegaPoint {
    n: i64,
    omega: u64,
    in_monoid: bool,
}

impl Record for OmegaPoint {
    fn json(&self) -> Value {
        json!({ "n": self.n, "omega": self.omega, "in_monoid": self.in_monoid })
    }
    fn csv(&self) -> Vec<Vec<String>> {
        vec![cells(&[self.n, self.omega as i64, i64::from(self.in_monoid)])]
    }
    fn plain(&self) -> String {
        format!("{} {} {}", self.n, self.omega, u8::from(self.in_monoid))
    }
}

/// Delta rows cover `n ∈ S ∩ (0, horizon]`; omega rows start at `-F(S) - n_k`,
/// far enough below `-F(S)` to show the zero plateau.
fn plotdata(ctx: &Context<'_>, out: Out, plot: Plot, horizon: i64, stream: bool) -> Result<(), CliError> {
    let s = ctx.monoid;
    match plot {
        Plot::Delta => {
            let mut emitter = Emitter::new(ctx, out, "rows", header(&["n", "d"]), stream)?;
            if horizon > 0 {
                let mut failure = None;
                deltas_up_to(s, horizon, |m, d: &DeltaSet| {
                    for &g in d.gaps() {
                        if failure.is_none() {
                            failure = emitter.push(&DeltaPoint { n: m, d: g }).err();
                        }
                    }
                })?;
                if let Some(e) = failure {
                    return Err(e.into());
                }
            }
            emitter.finish(object(json!({ "plot": "delta", "horizon": horizon })))?;
        }
        Plot::Omega => {
            let mut emitter = Emitter::new(ctx, out, "rows", header(&["n", "omega", "in_monoid"]), stream)?;
            let base = -s.frobenius();
            for n in base - s.max_generator()..base.min(horizon + 1) {
                emitter.push(&OmegaPoint {
                    n,
                    omega: 0,
                    in_monoid: false,
                })?;
            }
            let mut scan = OmegaScan::new(s)?;
            while scan.next_element() <= horizon {
                let step = scan.advance()?;
                let point = OmegaPoint {
                    n: step.element,
                    omega: step.omega,
                    in_monoid: s.contains(step.element),
                };
                emitter.push(&point)?;
            }
            emitter.finish(object(json!({ "plot": "omega", "horizon": horizon })))?;
        }
    }
    Ok(())
}
