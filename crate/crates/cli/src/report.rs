use std::fmt::Write;

use crate::json::Json;

#[derive(Debug, Clone, PartialEq)]
pub enum InputValue {
    Num(f64),
    Text(String),
}

impl From<f64> for InputValue {
    fn from(v: f64) -> Self {
        InputValue::Num(v)
    }
}

impl From<String> for InputValue {
    fn from(s: String) -> Self {
        InputValue::Text(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
        }
    }
}

/// Outcome of one `solve` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub problem: String,
    pub inputs: Vec<(String, InputValue)>,
    pub solution: Vec<(String, f64)>,
    pub method: String,
    pub residuals: Vec<(String, f64)>,
    /// Bound every residual must meet for a successful run.
    pub tolerance: f64,
    pub status: Status,
    pub diagnostic: Option<String>,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportError(pub String);

impl std::fmt::Display for ReportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed report: {}", self.0)
    }
}

impl std::error::Error for ReportError {}

fn named_reals(pairs: &[(String, f64)]) -> Json {
    Json::Obj(
        pairs
            .iter()
            .map(|(k, v)| (k.clone(), Json::Num(*v)))
            .collect(),
    )
}

fn parse_reals(doc: &Json, key: &str) -> Result<Vec<(String, f64)>, ReportError> {
    match doc.get(key) {
        Some(Json::Obj(fields)) => fields
            .iter()
            .map(|(k, v)| {
                v.as_f64()
                    .map(|v| (k.clone(), v))
                    .ok_or_else(|| ReportError(format!("{key}.{k} is not a number")))
            })
            .collect(),
        _ => Err(ReportError(format!("missing object {key:?}"))),
    }
}

fn text_field<'a>(doc: &'a Json, key: &str) -> Result<&'a str, ReportError> {
    doc.get(key)
        .and_then(Json::as_str)
        .ok_or_else(|| ReportError(format!("missing string {key:?}")))
}

fn num_field(doc: &Json, key: &str) -> Result<f64, ReportError> {
    doc.get(key)
        .and_then(Json::as_f64)
        .ok_or_else(|| ReportError(format!("missing number {key:?}")))
}

impl RunReport {
    /// Largest residual, or `None` when there are none.
    pub fn worst_residual(&self) -> Option<(&str, f64)> {
        self.residuals
            .iter()
            .map(|(k, v)| (k.as_str(), if v.is_nan() { f64::INFINITY } else { *v }))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn solution_value(&self, key: &str) -> Option<f64> {
        self.solution
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
    }

    pub fn to_json(&self) -> Json {
        let inputs = self
            .inputs
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    InputValue::Num(x) => Json::Num(*x),
                    InputValue::Text(s) => Json::Str(s.clone()),
                };
                (k.clone(), v)
            })
            .collect();
        let mut fields = vec![
            ("problem".to_string(), Json::from(self.problem.as_str())),
            ("status".to_string(), Json::from(self.status.as_str())),
            ("inputs".to_string(), Json::Obj(inputs)),
            ("solution".to_string(), named_reals(&self.solution)),
            ("method".to_string(), Json::from(self.method.as_str())),
            ("residuals".to_string(), named_reals(&self.residuals)),
            ("tolerance".to_string(), Json::Num(self.tolerance)),
            (
                "elapsed_seconds".to_string(),
                Json::Num(self.elapsed_seconds),
            ),
        ];
        if let Some(d) = &self.diagnostic {
            fields.push(("diagnostic".to_string(), Json::from(d.as_str())));
        }
        Json::Obj(fields)
    }

    pub fn from_json(doc: &Json) -> Result<Self, ReportError> {
        let status = match text_field(doc, "status")? {
            "ok" => Status::Ok,
            "infeasible" => Status::Infeasible,
            other => return Err(ReportError(format!("unknown status {other:?}"))),
        };
        let inputs = match doc.get("inputs") {
            Some(Json::Obj(fields)) => fields
                .iter()
                .map(|(k, v)| match v {
                    Json::Num(x) => Ok((k.clone(), InputValue::Num(*x))),
                    Json::Str(s) => Ok((k.clone(), InputValue::Text(s.clone()))),
                    _ => Err(ReportError(format!(
                        "input {k:?} is neither number nor string"
                    ))),
                })
                .collect::<Result<_, _>>()?,
            _ => return Err(ReportError("missing object \"inputs\"".into())),
        };
        Ok(RunReport {
            problem: text_field(doc, "problem")?.to_string(),
            inputs,
            solution: parse_reals(doc, "solution")?,
            method: text_field(doc, "method")?.to_string(),
            residuals: parse_reals(doc, "residuals")?,
            tolerance: num_field(doc, "tolerance")?,
            status,
            diagnostic: doc
                .get("diagnostic")
                .and_then(Json::as_str)
                .map(str::to_string),
            elapsed_seconds: num_field(doc, "elapsed_seconds")?,
        })
    }

    pub fn render_json(&self) -> String {
        self.to_json().render()
    }

    pub fn parse_json(text: &str) -> Result<Self, ReportError> {
        let doc = Json::parse(text).map_err(|e| ReportError(e.to_string()))?;
        Self::from_json(&doc)
    }

    /// Aligned `key  value` lines for people.
    pub fn render_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("problem".into(), self.problem.clone()),
            ("status".into(), self.status.as_str().into()),
            ("method".into(), self.method.clone()),
        ];
        for (k, v) in &self.inputs {
            let v = match v {
                InputValue::Num(x) => text_number(*x),
                InputValue::Text(s) => s.clone(),
            };
            rows.push((format!("input.{k}"), v));
        }
        rows.extend(
            self.solution
                .iter()
                .map(|(k, v)| (k.clone(), text_number(*v))),
        );
        rows.extend(
            self.residuals
                .iter()
                .map(|(k, v)| (format!("residual.{k}"), text_number(*v))),
        );
        rows.push(("tolerance".into(), text_number(self.tolerance)));
        rows.push((
            "elapsed_seconds".into(),
            format!("{:.6}", self.elapsed_seconds),
        ));
        if let Some(d) = &self.diagnostic {
            rows.push(("diagnostic".into(), d.clone()));
        }
        align(&rows)
    }
}

/// 17 significant digits, positional notation for moderate magnitudes.
pub fn text_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        format!("{v:.16e}")
    }
}

pub fn align(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
    out
}
