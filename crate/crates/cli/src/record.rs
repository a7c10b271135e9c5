use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use mestre_core::ellcurve::{ECPoint, ShortW};
use mestre_core::exactalg::rat::{parse_rat, rat_to_string};
use mestre_core::exactalg::Rat;
use mestre_core::families::SpecializedCurve;
use mestre_core::heights::{RankCertificate, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
}

/// One specialization of a family, with its certificate if one was attempted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub family: String,
    pub j: String,
    pub t: String,
    pub curve: Option<CurveModel>,
    /// Affine points as `[x, y]`.
    pub points: Vec<[String; 2]>,
    pub gram_det: Option<String>,
    pub det_err: Option<String>,
    pub prec_bits: usize,
    /// `2^n` for `n` points: converts `gram_det` (heights in the half
    /// x-height normalization) to the full-height convention.
    pub normalization_factor: u64,
    pub independent: bool,
    pub excluded_reason: Option<String>,
    /// Why the specialization or certificate failed, if it did.
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RecordsDoc {
    records: Vec<CurveRecord>,
}

/// The CSV shape: nested fields are JSON-encoded into one cell each, as are
/// the free-text reasons, so an empty cell means absent and `""` means empty.
#[derive(Serialize, Deserialize)]
struct CsvRow {
    family: String,
    j: String,
    t: String,
    curve: String,
    points: String,
    gram_det: Option<String>,
    det_err: Option<String>,
    prec_bits: usize,
    normalization_factor: u64,
    independent: bool,
    excluded_reason: Option<String>,
    error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` means CSV, anything else JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub fn normalization_factor(points: usize) -> u64 {
    1 << points
}

fn point_strings(p: &ECPoint<Rat>) -> [String; 2] {
    match p.coords() {
        Some((x, y)) => [rat_to_string(x), rat_to_string(y)],
        None => ["inf".into(), "inf".into()],
    }
}

impl CurveRecord {
    pub fn new(
        j: &Rat,
        spec: &SpecializedCurve,
        cert: Option<&RankCertificate>,
        prec_bits: usize,
    ) -> CurveRecord {
        CurveRecord {
            family: spec.family.clone(),
            j: rat_to_string(j),
            t: rat_to_string(&spec.t0),
            curve: spec.curve.as_ref().map(|c| CurveModel { a: rat_to_string(&c.a), b: rat_to_string(&c.b) }),
            points: spec.points.iter().map(point_strings).collect(),
            gram_det: cert.map(|c| c.gram.determinant.to_decimal_auto()),
            det_err: cert.map(|c| c.gram.determinant.err_string()),
            prec_bits,
            normalization_factor: normalization_factor(spec.points.len()),
            independent: cert.is_some_and(|c| c.verdict == Verdict::Independent),
            excluded_reason: spec.excluded.clone(),
            error: None,
        }
    }

    pub fn failed(family: &str, j: &Rat, t: &Rat, prec_bits: usize, error: String) -> CurveRecord {
        CurveRecord {
            family: family.to_string(),
            j: rat_to_string(j),
            t: rat_to_string(t),
            curve: None,
            points: Vec::new(),
            gram_det: None,
            det_err: None,
            prec_bits,
            normalization_factor: 1,
            independent: false,
            excluded_reason: None,
            error: Some(error),
        }
    }

    pub fn rank_lower_bound(&self) -> usize {
        if self.independent {
            self.points.len()
        } else {
            0
        }
    }

    pub fn parsed_curve(&self) -> anyhow::Result<Option<ShortW<Rat>>> {
        let Some(c) = &self.curve else { return Ok(None) };
        let e = ShortW::new(parse_rat(&c.a)?, parse_rat(&c.b)?)?;
        Ok(Some(e))
    }

    pub fn parsed_points(&self) -> anyhow::Result<Vec<ECPoint<Rat>>> {
        self.points
            .iter()
            .map(|[x, y]| {
                if x == "inf" {
                    Ok(ECPoint::Infinity)
                } else {
                    Ok(ECPoint::affine(parse_rat(x)?, parse_rat(y)?))
                }
            })
            .collect()
    }

    /// Re-checks the record from its strings alone: every point lies on the
    /// curve, and the certificate fields are consistent with each other.
    pub fn revalidate(&self) -> anyhow::Result<()> {
        let t = format!("t = {}", self.t);
        parse_rat(&self.j)?;
        parse_rat(&self.t)?;
        let curve = self.parsed_curve().with_context(|| t.clone())?;
        match (&curve, &self.excluded_reason, &self.error) {
            (Some(_), Some(_), _) => bail!("{t}: excluded record carries a curve"),
            (None, None, None) => bail!("{t}: record has neither a curve nor a reason"),
            _ => {}
        }
        if let Some(e) = &curve {
            for (i, p) in self.parsed_points()?.iter().enumerate() {
                if !e.contains(p) {
                    bail!("{t}: P{} is not on y^2 = x^3 + ({})x + ({})", i + 1, e.a, e.b);
                }
            }
        } else if !self.points.is_empty() {
            bail!("{t}: points without a curve");
        }
        if self.gram_det.is_some() != self.det_err.is_some() {
            bail!("{t}: gram_det and det_err must appear together");
        }
        if self.independent && self.gram_det.is_none() {
            bail!("{t}: independent without a determinant");
        }
        if let Some(d) = &self.gram_det {
            d.parse::<f64>().with_context(|| format!("{t}: gram_det {d:?}"))?;
        }
        Ok(())
    }
}

pub fn to_json(records: &[CurveRecord]) -> String {
    serde_json::to_string_pretty(&RecordsDoc { records: records.to_vec() }).expect("records serialize")
}

pub fn from_json(s: &str) -> anyhow::Result<Vec<CurveRecord>> {
    Ok(serde_json::from_str::<RecordsDoc>(s)?.records)
}

fn text_cell(v: &Option<String>) -> anyhow::Result<Option<String>> {
    Ok(match v {
        Some(s) => Some(serde_json::to_string(s)?),
        None => None,
    })
}

fn from_text_cell(v: Option<String>) -> anyhow::Result<Option<String>> {
    Ok(match v {
        Some(s) => Some(serde_json::from_str(&s)?),
        None => None,
    })
}

pub fn to_csv(records: &[CurveRecord]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            family: r.family.clone(),
            j: r.j.clone(),
            t: r.t.clone(),
            curve: serde_json::to_string(&r.curve)?,
            points: serde_json::to_string(&r.points)?,
            gram_det: r.gram_det.clone(),
            det_err: r.det_err.clone(),
            prec_bits: r.prec_bits,
            normalization_factor: r.normalization_factor,
            independent: r.independent,
            excluded_reason: text_cell(&r.excluded_reason)?,
            error: text_cell(&r.error)?,
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn from_csv(s: &str) -> anyhow::Result<Vec<CurveRecord>> {
    let mut rd = csv::Reader::from_reader(s.as_bytes());
    rd.deserialize::<CsvRow>()
        .map(|row| {
            let r = row?;
            Ok(CurveRecord {
                family: r.family,
                j: r.j,
                t: r.t,
                curve: serde_json::from_str(&r.curve)?,
                points: serde_json::from_str(&r.points)?,
                gram_det: r.gram_det,
                det_err: r.det_err,
                prec_bits: r.prec_bits,
                normalization_factor: r.normalization_factor,
                independent: r.independent,
                excluded_reason: from_text_cell(r.excluded_reason)?,
                error: from_text_cell(r.error)?,
            })
        })
        .collect()
}

pub fn write_records(path: &Path, format: Format, records: &[CurveRecord]) -> anyhow::Result<()> {
    let body = match format {
        Format::Json if records.is_empty() => String::new(),
        Format::Json => to_json(records),
        Format::Csv => to_csv(records)?,
    };
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

pub fn read_records(path: &Path, format: Format) -> anyhow::Result<Vec<CurveRecord>> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    match format {
        Format::Json => from_json(&s),
        Format::Csv => from_csv(&s),
    }
}
