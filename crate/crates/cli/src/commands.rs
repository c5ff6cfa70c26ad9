//! Subcommand implementations. Each produces a status, a JSON result and a text rendering.

use std::fmt::Write as _;
use std::path::Path;

use extenders::counts::{f_triangle, h_triangle};
use extenders::extender::{measured_size, size_estimate, ExtenderResult};
use extenders::homology::{
    cm_extender, cm_violation_with, depth_report, relative_cm_violation_with,
};
use extenders::{
    check_shelling_order, extender_for_complex, f_vector, find_partitioning, find_shelling,
    h_vector, nonpure_extender_for_complex, relative_family, verify_partitioning,
    CmExtenderOutcome, Exec, Face, FaceFamily, FacePoset, FieldSpec, IntervalPartition,
    Partitionability, SearchLimits, Shellability, SimplicialComplex,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::input::{self, ComplexDocument, InputError};
use crate::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Library(#[from] extenders::Error),
    #[error("{0}")]
    Report(String),
}

pub struct Outcome {
    pub status: u8,
    command: &'static str,
    input: Value,
    result: Value,
    certificates: Vec<Value>,
    pub text: String,
}

impl Outcome {
    fn new(
        status: u8,
        command: &'static str,
        input: Value,
        result: impl Serialize,
        text: String,
    ) -> Self {
        Outcome {
            status,
            command,
            input,
            result: to_value(result),
            certificates: Vec::new(),
            text,
        }
    }

    fn with_certificate(mut self, cert: Value) -> Self {
        self.certificates.push(cert);
        self
    }

    /// Canonical JSON: object keys sorted, certificates in construction order.
    pub fn json(&self, cli: &Cli) -> String {
        let doc = json!({
            "command": self.command,
            "options": {
                "char": cli.characteristic,
                "max_faces": cli.max_faces,
                "max_facets": cli.max_facets,
            },
            "input": self.input,
            "result": self.result,
            "certificates": self.certificates,
        });
        serde_json::to_string(&doc).expect("report is valid JSON")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn doc_value(doc: &ComplexDocument) -> Value {
    json!({
        "path": doc.path.display().to_string(),
        "name": doc.name,
        "facets": doc.complex,
    })
}

/// A complex, optionally relative to a subcomplex.
struct Pair {
    big: ComplexDocument,
    small: Option<ComplexDocument>,
}

impl Pair {
    fn read(path: &Path, relative_to: Option<&Path>) -> Result<Self, CliError> {
        Ok(Pair {
            big: input::read_complex(path)?,
            small: relative_to.map(input::read_complex).transpose()?,
        })
    }

    fn small_complex(&self) -> Option<&SimplicialComplex> {
        self.small.as_ref().map(|d| &d.complex)
    }

    fn family(&self) -> Result<FaceFamily, CliError> {
        Ok(match self.small_complex() {
            Some(s) => relative_family(&self.big.complex, s)?,
            None => self.big.complex.to_family(),
        })
    }

    fn input(&self) -> Value {
        json!({
            "complex": doc_value(&self.big),
            "relative_to": self.small.as_ref().map(doc_value),
        })
    }
}

fn partition_certificate(
    name: &str,
    complex: &SimplicialComplex,
    relative_to: Option<&SimplicialComplex>,
    p: &IntervalPartition,
) -> Value {
    json!({
        "kind": "partition",
        "name": name,
        "complex": complex,
        "relative_to": relative_to,
        "intervals": p,
    })
}

fn shelling_certificate(
    complex: &SimplicialComplex,
    relative_to: Option<&SimplicialComplex>,
    order: &[Face],
) -> Value {
    json!({
        "kind": "shelling",
        "complex": complex,
        "relative_to": relative_to,
        "order": order,
    })
}

fn field(cli: &Cli) -> Result<FieldSpec, CliError> {
    Ok(FieldSpec::new(cli.characteristic)?)
}

fn limits(cli: &Cli) -> SearchLimits {
    SearchLimits {
        max_members: cli.max_faces,
        max_facets: cli.max_facets,
    }
}

fn verdict(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn list(faces: &[Face]) -> String {
    faces
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn intervals_text(p: &IntervalPartition) -> String {
    let mut out = String::new();
    for iv in p.canonical().intervals() {
        let _ = writeln!(out, "  {iv}");
    }
    out
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Info { complex, relative_to } => info(&Pair::read(complex, relative_to.as_deref())?),
        Command::Partitionable { complex, relative_to } => {
            partitionable(cli, &Pair::read(complex, relative_to.as_deref())?)
        }
        Command::VerifyPartition {
            complex,
            partition: Some(partition),
            relative_to,
        } => verify_partition(&Pair::read(complex, relative_to.as_deref())?, partition),
        Command::VerifyPartition {
            complex,
            partition: None,
            relative_to: None,
        } => verify_report(cli, complex),
        Command::VerifyPartition { .. } => Err(CliError::Report(
            "--relative-to needs a partition file; certificates in a report carry their own complexes".into(),
        )),
        Command::BuildExtender { complex, nonpure } => build_extender(&input::read_complex(complex)?, *nonpure),
        Command::Depth { complex } => depth(cli, &input::read_complex(complex)?),
        Command::CmCheck { complex } => cm_check(cli, &input::read_complex(complex)?),
        Command::RelCmCheck { complex, subcomplex } => rel_cm_check(cli, &Pair::read(complex, Some(subcomplex))?),
        Command::CmExtender { complex } => cm_ext(cli, &input::read_complex(complex)?),
        Command::ShellingCheck {
            complex,
            order,
            relative_to,
        } => shelling_check(&Pair::read(complex, relative_to.as_deref())?, order),
        Command::Shellable { complex, relative_to } => shellable(cli, &Pair::read(complex, relative_to.as_deref())?),
        Command::EstimateSize { d, k, measure } => estimate(*d, *k, *measure),
    }
}

#[derive(Serialize)]
struct Info {
    dimension: i32,
    pure: bool,
    vertices: usize,
    facets: usize,
    faces: usize,
    f_vector: extenders::CountVector,
    h_vector: extenders::CountVector,
    f_triangle: extenders::CountTriangle,
    h_triangle: extenders::CountTriangle,
}

fn info(pair: &Pair) -> Result<Outcome, CliError> {
    let fam = pair.family()?;
    let tops = fam.maximal_members();
    let info = Info {
        dimension: fam.ambient_dim(),
        pure: tops.windows(2).all(|w| w[0].len() == w[1].len()),
        vertices: pair.big.complex.vertices().len(),
        facets: tops.len(),
        faces: fam.len(),
        f_vector: f_vector(&fam),
        h_vector: h_vector(&fam),
        f_triangle: f_triangle(&fam),
        h_triangle: h_triangle(&fam),
    };
    let text = format!(
        "dimension {}\npure {}\nvertices {}\nfacets {}\nfaces {}\nf-vector {}\nh-vector {}\nf-triangle\n{}\nh-triangle\n{}\n",
        info.dimension,
        info.pure,
        info.vertices,
        info.facets,
        info.faces,
        info.f_vector,
        info.h_vector,
        info.f_triangle,
        info.h_triangle
    );
    Ok(Outcome::new(0, "info", pair.input(), info, text))
}

fn partitionable(cli: &Cli, pair: &Pair) -> Result<Outcome, CliError> {
    let fam = pair.family()?;
    let found = find_partitioning(&fam, &limits(cli))?;
    Ok(match &found {
        Partitionability::Partitionable(p) => {
            let text = format!("partitionable\n{}", intervals_text(p));
            let cert =
                partition_certificate("partitioning", &pair.big.complex, pair.small_complex(), p);
            Outcome::new(0, "partitionable", pair.input(), &found, text).with_certificate(cert)
        }
        Partitionability::NotPartitionable => Outcome::new(
            1,
            "partitionable",
            pair.input(),
            &found,
            "not partitionable\n".into(),
        ),
    })
}

fn verify_partition(pair: &Pair, path: &Path) -> Result<Outcome, CliError> {
    let p = input::read_partition(path)?;
    let report = verify_partitioning(&pair.family()?, &p);
    let text = match &report.violation {
        None => "valid partitioning\n".to_string(),
        Some(v) => format!("invalid partitioning: {v}\n"),
    };
    let mut input = pair.input();
    input["partition"] = json!(path.display().to_string());
    Ok(Outcome::new(
        verdict(report.valid),
        "verify-partition",
        input,
        &report,
        text,
    ))
}

fn complex_field(cert: &Value, key: &str) -> Result<Option<SimplicialComplex>, CliError> {
    match cert.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let facets: Vec<Face> = serde_json::from_value(v.clone())
                .map_err(|e| CliError::Report(format!("certificate field `{key}`: {e}")))?;
            Ok(Some(if facets.is_empty() {
                SimplicialComplex::void()
            } else {
                SimplicialComplex::from_facets(facets)
            }))
        }
    }
}

/// Re-checks one self-contained certificate. `Ok(None)` means it verified.
fn check_certificate(cli: &Cli, cert: &Value) -> Result<Option<String>, CliError> {
    let big = complex_field(cert, "complex")?
        .ok_or_else(|| CliError::Report("certificate without a complex".into()))?;
    let small = complex_field(cert, "relative_to")?;
    let kind = cert.get("kind").and_then(Value::as_str).unwrap_or("");
    let bad = |e: serde_json::Error| CliError::Report(format!("{kind} certificate: {e}"));
    match kind {
        "partition" => {
            let p: IntervalPartition =
                serde_json::from_value(cert["intervals"].clone()).map_err(bad)?;
            let fam = match &small {
                Some(s) => relative_family(&big, s)?,
                None => big.to_family(),
            };
            Ok(verify_partitioning(&fam, &p)
                .violation
                .map(|v| v.to_string()))
        }
        "shelling" => {
            let order: Vec<Face> = serde_json::from_value(cert["order"].clone()).map_err(bad)?;
            let ok = check_shelling_order(&big, small.as_ref(), &order)?;
            Ok((!ok).then(|| "not a shelling order".to_string()))
        }
        "cm_extender" => {
            let base = small
                .ok_or_else(|| CliError::Report("cm_extender certificate without a base".into()))?;
            let f = match cert.get("field").and_then(Value::as_u64) {
                Some(p) => FieldSpec::new(p as u32)?,
                None => field(cli)?,
            };
            if let Some(o) = cm_violation_with(&big, f, Exec::default())? {
                return Ok(Some(format!("extender is not Cohen-Macaulay: {o}")));
            }
            if let Some(o) = relative_cm_violation_with(&big, &base, f, Exec::default())? {
                return Ok(Some(format!("pair is not relatively Cohen-Macaulay: {o}")));
            }
            Ok(None)
        }
        other => Err(CliError::Report(format!(
            "unknown certificate kind `{other}`"
        ))),
    }
}

fn verify_report(cli: &Cli, path: &Path) -> Result<Outcome, CliError> {
    let text = input::read_text(path)?;
    let doc = input::parse_json(path, &text)?;
    let certs = doc
        .get("certificates")
        .and_then(Value::as_array)
        .filter(|c| !c.is_empty())
        .ok_or_else(|| {
            CliError::Report(format!("{}: no certificates to verify", path.display()))
        })?;
    let mut results = Vec::new();
    let mut out = String::new();
    for (i, cert) in certs.iter().enumerate() {
        let failure = check_certificate(cli, cert)?;
        let label = format!(
            "{} {}",
            cert.get("kind").and_then(Value::as_str).unwrap_or("?"),
            cert.get("name").and_then(Value::as_str).unwrap_or("")
        );
        let _ = match &failure {
            None => writeln!(out, "certificate {i} ({}): valid", label.trim()),
            Some(why) => writeln!(out, "certificate {i} ({}): INVALID: {why}", label.trim()),
        };
        results.push(json!({ "index": i, "valid": failure.is_none(), "violation": failure }));
    }
    let all = results.iter().all(|r| r["valid"] == json!(true));
    let input = json!({ "report": path.display().to_string() });
    Ok(Outcome::new(
        verdict(all),
        "verify-partition",
        input,
        json!({ "valid": all, "certificates": results }),
        out,
    ))
}

fn build_extender(doc: &ComplexDocument, nonpure: bool) -> Result<Outcome, CliError> {
    let res: ExtenderResult = if nonpure {
        nonpure_extender_for_complex(&doc.complex)?
    } else {
        extender_for_complex(&doc.complex)?
    };
    let report = res.report();
    let text = format!(
        "extender with {} facets, {} faces, {} new vertices\nh(base)     {}\nh(extender) {}\nh(relative) {}\n",
        res.extender.facets().len(),
        res.extender.num_faces(),
        report.added_vertices,
        report.h_base,
        report.h_extender,
        report.h_relative
    );
    let gamma = partition_certificate("extender", &res.extender, None, &res.gamma_partition);
    let rel = partition_certificate(
        "relative",
        &res.extender,
        Some(&res.base),
        &res.relative_partition,
    );
    Ok(Outcome::new(
        0,
        "build-extender",
        json!({ "complex": doc_value(doc), "nonpure": nonpure }),
        &report,
        text,
    )
    .with_certificate(gamma)
    .with_certificate(rel))
}

fn depth(cli: &Cli, doc: &ComplexDocument) -> Result<Outcome, CliError> {
    let r = depth_report(&doc.complex, field(cli)?)?;
    let mut text = format!("depth {} (Krull dimension {})\n", r.depth, r.krull_dim);
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness {w}");
    }
    Ok(Outcome::new(
        0,
        "depth",
        json!({ "complex": doc_value(doc) }),
        &r,
        text,
    ))
}

fn cm_check(cli: &Cli, doc: &ComplexDocument) -> Result<Outcome, CliError> {
    let f = field(cli)?;
    let violation = cm_violation_with(&doc.complex, f, Exec::default())?;
    let text = match &violation {
        None => format!("Cohen-Macaulay over {f}\n"),
        Some(o) => format!("not Cohen-Macaulay over {f}: {o}\n"),
    };
    let result = json!({ "cohen_macaulay": violation.is_none(), "violation": violation });
    Ok(Outcome::new(
        verdict(violation.is_none()),
        "cm-check",
        json!({ "complex": doc_value(doc) }),
        result,
        text,
    ))
}

fn rel_cm_check(cli: &Cli, pair: &Pair) -> Result<Outcome, CliError> {
    let f = field(cli)?;
    let small = pair.small_complex().expect("subcomplex is required");
    let violation = relative_cm_violation_with(&pair.big.complex, small, f, Exec::default())?;
    let text = match &violation {
        None => format!("relatively Cohen-Macaulay over {f}\n"),
        Some(o) => format!("not relatively Cohen-Macaulay over {f}: {o}\n"),
    };
    let result = json!({ "relative_cm": violation.is_none(), "violation": violation });
    Ok(Outcome::new(
        verdict(violation.is_none()),
        "rel-cm-check",
        pair.input(),
        result,
        text,
    ))
}

fn cm_ext(cli: &Cli, doc: &ComplexDocument) -> Result<Outcome, CliError> {
    let f = field(cli)?;
    let out = cm_extender(&doc.complex, f)?;
    let input = json!({ "complex": doc_value(doc) });
    Ok(match &out {
        CmExtenderOutcome::Extender {
            extender,
            added_faces,
            ..
        } => {
            let text = format!(
                "Cohen-Macaulay extender with {} facets ({added_faces} added faces)\n",
                extender.facets().len()
            );
            let cert = json!({
                "kind": "cm_extender",
                "complex": extender,
                "relative_to": doc.complex,
                "field": f.characteristic(),
            });
            Outcome::new(0, "cm-extender", input, &out, text).with_certificate(cert)
        }
        CmExtenderOutcome::NoExtender {
            face,
            degree,
            depth,
            ..
        } => {
            let text = format!(
                "no Cohen-Macaulay extender: depth {depth} < {}; link of {face} has homology in degree {degree}\n",
                doc.complex.dim()
            );
            Outcome::new(1, "cm-extender", input, &out, text)
        }
    })
}

fn shelling_check(pair: &Pair, path: &Path) -> Result<Outcome, CliError> {
    let order = input::read_order(path)?;
    let ok = check_shelling_order(&pair.big.complex, pair.small_complex(), &order)?;
    let text = if ok {
        "shelling order\n"
    } else {
        "not a shelling order\n"
    };
    let mut input = pair.input();
    input["order"] = json!(order);
    Ok(Outcome::new(
        verdict(ok),
        "shelling-check",
        input,
        json!({ "shelling": ok }),
        text.into(),
    ))
}

fn shellable(cli: &Cli, pair: &Pair) -> Result<Outcome, CliError> {
    let found = find_shelling(&pair.big.complex, pair.small_complex(), &limits(cli))?;
    Ok(match &found {
        Shellability::Shellable(order) => {
            let cert = shelling_certificate(&pair.big.complex, pair.small_complex(), order);
            Outcome::new(
                0,
                "shellable",
                pair.input(),
                &found,
                format!("shellable\n  {}\n", list(order)),
            )
            .with_certificate(cert)
        }
        Shellability::NotShellable => Outcome::new(
            1,
            "shellable",
            pair.input(),
            &found,
            "not shellable\n".into(),
        ),
    })
}

fn estimate(d: i32, k: i32, measure: bool) -> Result<Outcome, CliError> {
    let est = size_estimate(d, k)?;
    let measured = if measure {
        Some(measured_size(d, k)?)
    } else {
        None
    };
    let mut text = format!(
        "g({k}) = {} added faces for d = {d}\nbound 2^(2^{k} - 1 + {d}) = {}\n",
        est.recurrence, est.upper_bound
    );
    if let Some(m) = &measured {
        let _ = writeln!(
            text,
            "built: {} vertices, {} facets, {} faces ({} outside the specified facet)",
            m.vertices, m.facets, m.faces, m.added_faces
        );
    }
    let result = json!({ "estimate": est, "measured": measured });
    Ok(Outcome::new(
        0,
        "estimate-size",
        json!({ "d": d, "k": k }),
        result,
        text,
    ))
}
