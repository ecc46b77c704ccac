//! Command implementations. Each takes the file contents already read and
//! returns the command result or a [`CliError`].

use zptower::asw::{default_budget, eval_form, reduce_global_p1, reduce_local_with};
use zptower::cft::{
    conductor_exponent, conductor_via_symbol, factor_unit, ramification_break, symbol_classical, symbol_residue,
    symbol_sum, ValuationProfile,
};
use zptower::tower::{frobenius_at, genus_sequence, l_degree, stability_classify};
use zptower::Error;

use crate::report::{
    BreakJson, BreaksResult, CommandResult, ConductorLevel, ConductorResult, Config, FrobeniusResult, GenusResult,
    GlobalFormJson, GlobalPlaceJson, LDegreeResult, ReduceResult,
};
use crate::schema::{
    parse, parse_tower_or_profile, unram_json, AtJson, CliError, ElemJson, FieldJson, FrobeniusFile, InputError,
    LocalFormFile, ReduceFile, ReduceInput, UnitFile, ZpJson,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce,
    Symbol,
    Conductor,
    Breaks,
    Genus,
    Stability,
    Ldegree,
    Frobenius,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Reduce => "reduce",
            Command::Symbol => "symbol",
            Command::Conductor => "conductor",
            Command::Breaks => "breaks",
            Command::Genus => "genus",
            Command::Stability => "stability",
            Command::Ldegree => "ldegree",
            Command::Frobenius => "frobenius",
            Command::Oracle => "oracle",
        }
    }
}

/// File contents keyed like the `--input`, `--form` and `--unit` flags.
#[derive(Clone, Debug, Default)]
pub struct Sources {
    pub input: Option<String>,
    pub form: Option<String>,
    pub unit: Option<String>,
}

fn need<'a>(text: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    text.as_deref()
        .ok_or_else(|| InputError::at(flag, format!("{flag} is required for this command")).into())
}

fn need_n(v: Option<u32>, flag: &str) -> Result<u32, CliError> {
    match v {
        None => Err(InputError::at(flag, format!("{flag} is required for this command")).into()),
        Some(0) => Err(InputError::at(flag, format!("{flag} must be at least 1")).into()),
        Some(n) => Ok(n),
    }
}

/// The working precision: `--precision` if given, else `level`.
fn working(cfg: &Config, level: u32) -> Result<u32, CliError> {
    match cfg.precision {
        Some(p) if p < level => Err(InputError::at(
            "--precision",
            format!("precision {p} is below the requested level {level}"),
        )
        .into()),
        Some(p) => Ok(p),
        None => Ok(level),
    }
}

pub fn run(cmd: Command, cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    match cmd {
        Command::Reduce => reduce(cfg, src),
        Command::Symbol => symbol(cfg, src),
        Command::Conductor => conductor(cfg, src),
        Command::Breaks => breaks(cfg, src),
        Command::Genus => genus(cfg, src),
        Command::Stability => stability(cfg, src),
        Command::Ldegree => ldegree(cfg, src),
        Command::Frobenius => frobenius(cfg, src),
        Command::Oracle => Ok(CommandResult::Oracle(crate::oracle::run(cfg.seed.unwrap_or(0)))),
    }
}

fn reduce(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let file: ReduceFile = parse(need(&src.input, "--input")?)?;
    match file.build()? {
        ReduceInput::Local(k, x) => {
            let budget = cfg.series_precision.unwrap_or_else(|| default_budget(&k, &x));
            let sf = reduce_local_with(&k, &x, budget)?;
            Ok(CommandResult::Reduce(ReduceResult {
                local: Some(LocalFormFile::from_form(&k, &sf)),
                global: None,
            }))
        }
        ReduceInput::Global(r, a) => {
            let g = reduce_global_p1(&r, &a)?;
            let k = r.field();
            let places = g
                .places
                .iter()
                .map(|(place, terms)| GlobalPlaceJson {
                    at: AtJson::from_place(k, place),
                    coeffs: terms.iter().map(|(i, c)| (i.to_string(), unram_json(k, c))).collect(),
                })
                .collect();
            Ok(CommandResult::Reduce(ReduceResult {
                local: None,
                global: Some(GlobalFormJson {
                    field: FieldJson::from_field(k),
                    precision: g.precision(),
                    alpha: ElemJson::from_elem(k, &g.alpha),
                    c: ZpJson::Digits(g.c.digits()),
                    places,
                }),
            }))
        }
    }
}

fn symbol(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let n = need_n(cfg.n, "--n")?;
    let w = working(cfg, n)?;
    let form: LocalFormFile = parse(need(&src.form, "--form")?)?;
    let (k, sf) = form.build(w)?;
    let unit: UnitFile = parse(need(&src.unit, "--unit")?)?;
    let y = unit.build(&k, w)?;
    let res = symbol_residue(&k, &sf, &y, n)?;
    let fac = factor_unit(&k, &y, sf.pole_depth(), n)?;
    let sum = symbol_sum(&k, &sf, &fac, n)?;
    let classical = if n == 1 {
        Some(symbol_classical(&k, eval_form(&k, &sf).coord(0), &y)?)
    } else {
        None
    };
    let agreement = res == sum && classical.map_or(true, |c| c == res.value());
    Ok(CommandResult::Symbol(crate::report::SymbolResult {
        n,
        modulus: res.modulus(),
        value: res.value(),
        residue_formula: res.value(),
        double_sum: sum.value(),
        agreement,
        classical,
    }))
}

fn conductor(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let text = need(&src.form, "--form")?;
    let probe: LocalFormFile = parse(text)?;
    let n_max = match cfg.n_max.or(cfg.n) {
        Some(0) => return Err(InputError::at("--nmax", "--nmax must be at least 1").into()),
        Some(n) => n,
        None => probe.precision.unwrap_or(1) as u32,
    };
    let (k, sf) = probe.build(working(cfg, n_max)?)?;
    let p = k.p();
    let vp = ValuationProfile::from_form(&k, &sf);
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let u = conductor_exponent(p, &vp, n);
        let oracle = match conductor_via_symbol(&k, &sf, n, u + 1) {
            Err(Error::BoundTooSmall(_)) => conductor_via_symbol(&k, &sf, n, 2 * u + 2)?,
            other => other?,
        };
        levels.push(ConductorLevel {
            n,
            u,
            u_symbol: oracle.conductor,
            uniformizer_symbol: oracle.uniformizer_symbol,
        });
    }
    let agreement = levels.iter().all(|l| l.u == l.u_symbol);
    Ok(CommandResult::Conductor(ConductorResult { levels, agreement }))
}

fn breaks(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let r_max = cfg
        .r_max
        .ok_or_else(|| InputError::at("--rmax", "--rmax is required for this command"))?;
    let form: LocalFormFile = parse(need(&src.form, "--form")?)?;
    let level = form.precision.unwrap_or(1) as u32;
    let (k, sf) = form.build(working(cfg, level)?)?;
    let vp = ValuationProfile::from_form(&k, &sf);
    let breaks = (0..=r_max)
        .map(|r| {
            ramification_break(k.p(), &vp, r).map(|b| BreakJson {
                r,
                raw: b.raw,
                clamped: b.clamped,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CommandResult::Breaks(BreaksResult { breaks }))
}

fn genus(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let n_max = need_n(cfg.n_max.or(cfg.n), "--nmax")?;
    let tower = parse_tower_or_profile(need(&src.input, "--input")?, working(cfg, n_max)?)?;
    let report = genus_sequence(&tower.profile, n_max)?;
    let warning = tower.datum.as_ref().and_then(|d| d.nc_nu().warning);
    Ok(CommandResult::Genus(GenusResult::new(&report, warning)))
}

fn stability(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let level = cfg.precision.unwrap_or(1);
    let tower = parse_tower_or_profile(need(&src.input, "--input")?, level)?;
    let report = stability_classify(&tower.profile)?;
    Ok(CommandResult::Stability((&report).into()))
}

fn ldegree(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let m = need_n(cfg.n, "--n")?;
    let tower = parse_tower_or_profile(need(&src.input, "--input")?, working(cfg, m)?)?;
    let d = l_degree(&tower.profile, m)?;
    Ok(CommandResult::Ldegree(LDegreeResult {
        m_chi: m,
        degree: (&d.degree).into(),
        linear_form: d.linear_form.as_ref().map(Into::into),
        degenerate: d.degenerate,
    }))
}

fn frobenius(cfg: &Config, src: &Sources) -> Result<CommandResult, CliError> {
    let n = need_n(cfg.n, "--n")?;
    let w = working(cfg, n)?;
    let file: FrobeniusFile = parse(need(&src.input, "--input")?)?;
    if file.witt.coords.len() < w as usize {
        return Err(InputError::at(
            "/witt/coords",
            format!("{} coordinates are below the requested level {w}", file.witt.coords.len()),
        )
        .into());
    }
    let inp = file.build()?;
    let v = frobenius_at(&inp.ring, &inp.witt, &inp.ext, &inp.z, n)?;
    Ok(CommandResult::Frobenius(FrobeniusResult {
        n,
        modulus: v.modulus(),
        value: v.value(),
    }))
}
