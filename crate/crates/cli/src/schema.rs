//! Input file formats and their conversion into library values.
//!
//! Deserialisation errors and semantic validation errors both carry a JSON
//! pointer to the offending field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use zptower::algebra::{FFElem, FieldSpec, Fq, UnramElem, UnramRing, ZpApprox};
use zptower::asw::{GlobalStandardForm, LocalStandardForm};
use zptower::cft::{LocalUnit, ValuationProfile};
use zptower::poly::{Place, RatFunc};
use zptower::ring::Ring;
use zptower::tower::{PlaceData, PlaceProfile, RamificationProfile, Stream, SupDeclaration, TowerDatum};
use zptower::witt::WittVec;
use zptower::{GlobalField, LocalElem, LocalField};

pub const SCHEMA_VERSION: &str = "zptower/1";

/// A malformed input, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub pointer: String,
    pub message: String,
}

impl InputError {
    pub fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

type In<T> = std::result::Result<T, InputError>;

/// Failure of a command: malformed input or a domain error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(InputError),
    Domain(zptower::Error),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<zptower::Error> for CliError {
    fn from(e: zptower::Error) -> Self {
        CliError::Domain(e)
    }
}

fn path_to_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => {}
        }
    }
    out
}

/// Parses `text` as `T`, reporting the pointer of the first failure.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> In<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = path_to_pointer(e.path());
        InputError::at(pointer, e.into_inner().to_string())
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldJson {
    pub fn from_field(k: &Fq) -> Self {
        let spec = k.spec();
        FieldJson {
            p: spec.p,
            f: Some(spec.f),
            modulus: Some(spec.modulus.clone()),
        }
    }

    pub fn build(&self, ptr: &str) -> In<Fq> {
        let res = match (&self.modulus, self.f) {
            (Some(m), f) => {
                if let Some(f) = f {
                    if m.len() != f + 1 {
                        return Err(InputError::at(
                            format!("{ptr}/modulus"),
                            format!("modulus must have f + 1 = {} coefficients", f + 1),
                        ));
                    }
                }
                Fq::new(FieldSpec::new(self.p, m.clone()))
            }
            (None, f) => Fq::with_degree(self.p, f.unwrap_or(1)),
        };
        res.map_err(|e| InputError::at(ptr, e.to_string()))
    }
}

/// A field element: an integer (prime fields) or little-endian coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemJson {
    Int(u64),
    Coeffs(Vec<u64>),
}

impl ElemJson {
    pub fn from_elem(k: &Fq, a: &FFElem) -> Self {
        if k.degree() == 1 {
            ElemJson::Int(a.constant_term())
        } else {
            ElemJson::Coeffs(a.coeffs(k.degree()))
        }
    }

    pub fn build(&self, k: &Fq, ptr: &str) -> In<FFElem> {
        let coeffs = match self {
            ElemJson::Int(c) => {
                let mut v = vec![0; k.degree()];
                v[0] = *c;
                v
            }
            ElemJson::Coeffs(c) => c.clone(),
        };
        k.elem(&coeffs).map_err(|e| InputError::at(ptr, e.to_string()))
    }
}

/// Witt coordinates of an element of `Z_q / p^N`, padded with zeros.
pub fn build_unram(k: &Fq, n: usize, digits: &[ElemJson], ptr: &str) -> In<UnramElem> {
    if digits.len() > n {
        return Err(InputError::at(ptr, format!("{} digits exceed precision {n}", digits.len())));
    }
    let mut coords = Vec::with_capacity(n);
    for (j, d) in digits.iter().enumerate() {
        coords.push(d.build(k, &format!("{ptr}/{j}"))?);
    }
    coords.resize(n, k.zero());
    Ok(WittVec::from_coords(coords))
}

pub fn unram_json(k: &Fq, c: &UnramElem) -> Vec<ElemJson> {
    c.coords().iter().map(|d| ElemJson::from_elem(k, d)).collect()
}

/// A `p`-adic integer: a plain integer or little-endian base-`p` digits.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ZpJson {
    Int(i64),
    Digits(Vec<u64>),
}

impl Default for ZpJson {
    fn default() -> Self {
        ZpJson::Int(0)
    }
}

impl ZpJson {
    pub fn build(&self, p: u64, n: u32, ptr: &str) -> In<ZpApprox> {
        match self {
            ZpJson::Int(v) => Ok(ZpApprox::new(p, n, *v)),
            ZpJson::Digits(d) => {
                if d.len() > n as usize {
                    return Err(InputError::at(ptr, format!("{} digits exceed precision {n}", d.len())));
                }
                let mut d = d.clone();
                d.resize(n as usize, 0);
                ZpApprox::from_digits(p, &d).map_err(|e| InputError::at(ptr, e.to_string()))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub tail: i64,
    pub coeffs: Vec<ElemJson>,
    #[serde(default = "yes")]
    pub exact: bool,
}

fn yes() -> bool {
    true
}

impl SeriesJson {
    pub fn build(&self, k: &Fq, ptr: &str) -> In<LocalElem> {
        let mut cs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            cs.push(c.build(k, &format!("{ptr}/coeffs/{i}"))?);
        }
        let known_to = (!self.exact).then(|| self.tail + cs.len() as i64);
        Ok(LocalField::new(k.clone()).series(self.tail, cs, known_to))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RatFuncJson {
    pub num: Vec<ElemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<ElemJson>>,
}

impl RatFuncJson {
    pub fn build(&self, r: &GlobalField, ptr: &str) -> In<RatFunc<FFElem>> {
        let k = r.field();
        let poly = |v: &[ElemJson], name: &str| -> In<Vec<FFElem>> {
            v.iter()
                .enumerate()
                .map(|(i, c)| c.build(k, &format!("{ptr}/{name}/{i}")))
                .collect()
        };
        let num = poly(&self.num, "num")?;
        let den = match &self.den {
            Some(d) => poly(d, "den")?,
            None => vec![k.one()],
        };
        r.frac(num, den).map_err(|e| InputError::at(format!("{ptr}/den"), e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WittJson<T> {
    pub coords: Vec<T>,
}

fn parse_terms(k: &Fq, n: usize, terms: &BTreeMap<String, Vec<ElemJson>>, ptr: &str) -> In<BTreeMap<u64, UnramElem>> {
    let p = k.p();
    let ur = UnramRing::new(k, n);
    let mut out = BTreeMap::new();
    for (key, digits) in terms {
        let here = format!("{ptr}/{key}");
        let i: u64 = key
            .parse()
            .map_err(|_| InputError::at(&here, "pole order must be a positive integer"))?;
        if i == 0 || i % p == 0 {
            return Err(InputError::at(&here, format!("pole order {i} must be positive and prime to p")));
        }
        let c = build_unram(k, n, digits, &here)?;
        if ur.valuation(&c).is_some() {
            out.insert(i, c);
        }
    }
    Ok(out)
}

fn build_alpha(k: &Fq, alpha: &Option<ElemJson>) -> In<FFElem> {
    match alpha {
        None => Ok(k.choose_alpha()),
        Some(a) => {
            let a = a.build(k, "/alpha")?;
            if k.trace(&a) == 0 {
                return Err(InputError::at("/alpha", "alpha must have nonzero trace"));
            }
            Ok(a)
        }
    }
}

fn resolve_precision(file: Option<usize>, working: u32, ptr: &str) -> In<usize> {
    match file {
        Some(0) => Err(InputError::at(ptr, "precision must be at least 1")),
        Some(n) if n < working as usize => Err(InputError::at(
            ptr,
            format!("data precision {n} is below the requested level {working}"),
        )),
        Some(n) => Ok(n),
        None => Ok(working as usize),
    }
}

/// `{"field", "precision"?, "alpha"?, "c", "terms": {"i": digits}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LocalFormFile {
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ElemJson>,
    #[serde(default)]
    pub c: ZpJson,
    #[serde(default)]
    pub terms: BTreeMap<String, Vec<ElemJson>>,
}

impl LocalFormFile {
    pub fn from_form(k: &Fq, sf: &LocalStandardForm) -> Self {
        LocalFormFile {
            field: FieldJson::from_field(k),
            precision: Some(sf.precision()),
            alpha: Some(ElemJson::from_elem(k, &sf.alpha)),
            c: ZpJson::Digits(sf.c.digits()),
            terms: sf.terms.iter().map(|(i, c)| (i.to_string(), unram_json(k, c))).collect(),
        }
    }

    pub fn build(&self, working: u32) -> In<(Fq, LocalStandardForm)> {
        let k = self.field.build("/field")?;
        let n = resolve_precision(self.precision, working, "/precision")?;
        let sf = LocalStandardForm {
            alpha: build_alpha(&k, &self.alpha)?,
            c: self.c.build(k.p(), n as u32, "/c")?,
            terms: parse_terms(&k, n, &self.terms, "/terms")?,
        };
        Ok((k, sf))
    }
}

/// `{"field"?, "e", "one_unit": series}` for `T^e u`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct UnitFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default)]
    pub e: ZpJson,
    pub one_unit: SeriesJson,
}

impl UnitFile {
    pub fn build(&self, k: &Fq, n: u32) -> In<LocalUnit> {
        if let Some(f) = &self.field {
            if &f.build("/field")? != k {
                return Err(InputError::at("/field", "unit field differs from the form field"));
            }
        }
        let e = self.e.build(k.p(), n, "/e")?;
        let u = self.one_unit.build(k, "/one_unit")?;
        LocalUnit::new(e, u).map_err(|_| InputError::at("/one_unit", "one_unit must start at T^0 with constant term 1"))
    }
}

/// A Witt vector to reduce: exactly one of `local` and `global`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReduceFile {
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<WittJson<SeriesJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<WittJson<RatFuncJson>>,
}

pub enum ReduceInput {
    Local(Fq, WittVec<LocalElem>),
    Global(GlobalField, WittVec<RatFunc<FFElem>>),
}

impl ReduceFile {
    pub fn build(&self) -> In<ReduceInput> {
        let k = self.field.build("/field")?;
        match (&self.local, &self.global) {
            (Some(w), None) => {
                if w.coords.is_empty() {
                    return Err(InputError::at("/local/coords", "at least one coordinate is required"));
                }
                let coords = w
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.build(&k, &format!("/local/coords/{i}")))
                    .collect::<In<Vec<_>>>()?;
                Ok(ReduceInput::Local(k, WittVec::from_coords(coords)))
            }
            (None, Some(w)) => {
                if w.coords.is_empty() {
                    return Err(InputError::at("/global/coords", "at least one coordinate is required"));
                }
                let r = GlobalField::new(&k);
                let coords = w
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.build(&r, &format!("/global/coords/{i}")))
                    .collect::<In<Vec<_>>>()?;
                Ok(ReduceInput::Global(r, WittVec::from_coords(coords)))
            }
            _ => Err(InputError::at("", "exactly one of \"local\" and \"global\" is required")),
        }
    }
}

/// `"inf"` or a field element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum AtJson {
    Name(String),
    Elem(ElemJson),
}

impl AtJson {
    pub fn from_place(k: &Fq, place: &Place) -> Self {
        match place {
            Place::Infinity => AtJson::Name("inf".into()),
            Place::Finite(x) => AtJson::Elem(ElemJson::from_elem(k, x)),
        }
    }

    fn build(&self, k: &Fq, ptr: &str) -> In<Place> {
        match self {
            AtJson::Name(s) if s == "inf" => Ok(Place::Infinity),
            AtJson::Name(s) => Err(InputError::at(ptr, format!("unknown place {s:?}; expected \"inf\" or a field element"))),
            AtJson::Elem(e) => Ok(Place::Finite(e.build(k, ptr)?)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PlaceJson {
    pub at: AtJson,
    pub coeffs: BTreeMap<String, Vec<ElemJson>>,
}

/// A rational number: an integer or `"a/b"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Text(String),
}

impl RatJson {
    fn build(&self, ptr: &str) -> In<BigRational> {
        match self {
            RatJson::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RatJson::Text(s) => {
                let bad = || InputError::at(ptr, format!("{s:?} is not a rational \"a/b\""));
                let (a, b) = s.split_once('/').unwrap_or((s, "1"));
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b == BigInt::from(0) {
                    return Err(bad());
                }
                Ok(BigRational::new(a, b))
            }
        }
    }
}

/// `{"stream": [[i, v]...], "horizon"?, "sup_attained"?, "sup"?}`; the
/// stream lists every term with `v < horizon` (default: last `v` + 1).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct StreamJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    pub stream: Vec<(u64, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup_attained: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup: Option<RatJson>,
}

impl StreamJson {
    fn build(&self, p: u64, ptr: &str) -> In<Stream> {
        let horizon = self
            .horizon
            .unwrap_or_else(|| self.stream.last().map_or(0, |t| t.1 + 1));
        let declared = match (self.sup_attained, &self.sup) {
            (None, None) => None,
            (Some(attained), Some(sup)) => Some(SupDeclaration {
                sup: sup.build(&format!("{ptr}/sup"))?,
                attained,
            }),
            (Some(_), None) => return Err(InputError::at(format!("{ptr}/sup"), "sup_attained requires sup")),
            (None, Some(_)) => return Err(InputError::at(format!("{ptr}/sup_attained"), "sup requires sup_attained")),
        };
        Stream::new(p, self.stream.clone(), horizon, declared).map_err(|e| InputError::at(format!("{ptr}/stream"), e.to_string()))
    }
}

/// Tower over `P^1`: normal-form data plus an optional procedural place.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ElemJson>,
    #[serde(default)]
    pub c: ZpJson,
    #[serde(default)]
    pub places: Vec<PlaceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub procedural: Option<StreamJson>,
}

/// The parsed tower: the datum (absent for purely procedural files) and the
/// profile used by genus computations.
pub struct TowerInput {
    pub field: Fq,
    pub datum: Option<TowerDatum>,
    pub profile: RamificationProfile,
}

impl TowerFile {
    pub fn build(&self, working: u32) -> Result<TowerInput, CliError> {
        let k = self.field.build("/field")?;
        let p = k.p();
        let n = resolve_precision(self.precision, working, "/precision")?;
        let mut places = BTreeMap::new();
        for (idx, pl) in self.places.iter().enumerate() {
            let ptr = format!("/places/{idx}");
            let place = pl.at.build(&k, &format!("{ptr}/at"))?;
            let terms = parse_terms(&k, n, &pl.coeffs, &format!("{ptr}/coeffs"))?;
            if places.insert(place, terms).is_some() {
                return Err(InputError::at(format!("{ptr}/at"), "place listed twice").into());
            }
        }
        places.retain(|_, t| !t.is_empty());
        let form = GlobalStandardForm {
            alpha: build_alpha(&k, &self.alpha)?,
            c: self.c.build(p, n as u32, "/c")?,
            places,
        };
        let stream = match &self.procedural {
            Some(s) => Some(s.build(p, "/procedural")?),
            None => None,
        };
        let datum = if form.places.is_empty() && stream.is_some() {
            None
        } else {
            Some(TowerDatum::from_form(&k, form)?)
        };
        let mut plist = Vec::new();
        if let Some(d) = &datum {
            if !d.nc_nu().constant {
                plist = d.profile()?.places;
            }
        }
        if let (Some(s), Some(js)) = (stream, &self.procedural) {
            plist.push(PlaceProfile {
                label: js.label.clone().unwrap_or_else(|| "procedural".into()),
                degree: js.degree.unwrap_or(1),
                data: PlaceData::Procedural(s),
            });
        }
        let n_c = plist.iter().filter_map(|pl| pl.min_valuation()).min().unwrap_or(0);
        let profile = RamificationProfile::new(p, 0, n_c, plist)?;
        Ok(TowerInput {
            field: k,
            datum,
            profile,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProfilePlaceJson {
    pub label: String,
    #[serde(default = "one")]
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuations: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream: Option<StreamJson>,
}

fn one() -> u64 {
    1
}

/// A general base: `{"p", "g0", "n_c", "places": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub p: u64,
    #[serde(default)]
    pub g0: u64,
    #[serde(default)]
    pub n_c: u32,
    pub places: Vec<ProfilePlaceJson>,
}

impl ProfileFile {
    pub fn build(&self) -> In<RamificationProfile> {
        let p = self.p;
        if !(2..=251).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(InputError::at("/p", format!("{p} is not a prime below 256")));
        }
        let mut places = Vec::new();
        for (idx, pl) in self.places.iter().enumerate() {
            let ptr = format!("/places/{idx}");
            if pl.degree == 0 {
                return Err(InputError::at(format!("{ptr}/degree"), "degree must be at least 1"));
            }
            let data = match (&pl.valuations, &pl.stream) {
                (Some(v), None) => {
                    let mut entries = Vec::new();
                    for (key, val) in v {
                        let i: u64 = key.parse().map_err(|_| {
                            InputError::at(format!("{ptr}/valuations/{key}"), "index must be a positive integer")
                        })?;
                        entries.push((i, *val));
                    }
                    let vp = ValuationProfile::new(p, entries)
                        .map_err(|e| InputError::at(format!("{ptr}/valuations"), e.to_string()))?;
                    PlaceData::Finite(vp)
                }
                (None, Some(s)) => PlaceData::Procedural(s.build(p, &format!("{ptr}/stream"))?),
                _ => {
                    return Err(InputError::at(ptr, "exactly one of \"valuations\" and \"stream\" is required"));
                }
            };
            places.push(PlaceProfile {
                label: pl.label.clone(),
                degree: pl.degree,
                data,
            });
        }
        RamificationProfile::new(p, self.g0, self.n_c, places).map_err(|e| InputError::at("", e.to_string()))
    }
}

/// Either a tower over `P^1` (has `"field"`) or a profile.
pub fn parse_tower_or_profile(text: &str, working: u32) -> Result<TowerInput, CliError> {
    let value: serde_json::Value = parse(text)?;
    if value.get("field").is_some() {
        let file: TowerFile = parse(text)?;
        file.build(working)
    } else {
        let file: ProfileFile = parse(text)?;
        let profile = file.build()?;
        let field = Fq::prime_field(file.p).map_err(|e| InputError::at("/p", e.to_string()))?;
        Ok(TowerInput {
            field,
            datum: None,
            profile,
        })
    }
}

/// `{"field", "witt": {"coords": [rational functions]}, "point": {"field", "z"}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusFile {
    pub field: FieldJson,
    pub witt: WittJson<RatFuncJson>,
    pub point: PointJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub field: FieldJson,
    pub z: ElemJson,
}

pub struct FrobeniusInput {
    pub ring: GlobalField,
    pub witt: WittVec<RatFunc<FFElem>>,
    pub ext: Fq,
    pub z: FFElem,
}

impl FrobeniusFile {
    pub fn build(&self) -> In<FrobeniusInput> {
        let k = self.field.build("/field")?;
        let ring = GlobalField::new(&k);
        if self.witt.coords.is_empty() {
            return Err(InputError::at("/witt/coords", "at least one coordinate is required"));
        }
        let coords = self
            .witt
            .coords
            .iter()
            .enumerate()
            .map(|(i, f)| f.build(&ring, &format!("/witt/coords/{i}")))
            .collect::<In<Vec<_>>>()?;
        let ext = self.point.field.build("/point/field")?;
        if ext.p() != k.p() {
            return Err(InputError::at("/point/field/p", "point field has a different characteristic"));
        }
        let z = self.point.z.build(&ext, "/point/z")?;
        Ok(FrobeniusInput {
            ring,
            witt: WittVec::from_coords(coords),
            ext,
            z,
        })
    }
}
