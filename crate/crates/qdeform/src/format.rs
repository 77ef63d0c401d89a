//! Text, CSV and JSON encodings of triangles, number tables and law reports.
//!
//! Every number in JSON output is a decimal string so that exact values
//! wider than 53 bits survive a round trip.

use std::fmt;
use std::str::FromStr;

use qdeform_core::laws::{Counterexample, LawReport};
use qdeform_core::pascal::{self, Triangle};
use qdeform_core::Scalar;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected text, json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

fn dec(v: &Scalar) -> Value {
    Value::String(v.to_decimal_string())
}

fn real(v: f64) -> Value {
    Value::String(Scalar::from_real(v).to_decimal_string())
}

pub fn triangle_json(t: &Triangle) -> Value {
    let rows: Vec<Value> = t.rows().iter().map(|row| Value::Array(row.iter().map(dec).collect())).collect();
    json!({
        "q": dec(t.q().q()),
        "g": dec(t.generator()),
        "mode": t.mode().name(),
        "rows": rows,
    })
}

/// Renders a triangle; `decimals` only affects the text pyramid.
pub fn render_triangle(t: &Triangle, fmt: Format, decimals: u32) -> String {
    match fmt {
        Format::Text => pascal::render_text(t, decimals),
        Format::Csv => pascal::render_csv(t),
        Format::Json => format!("{}\n", triangle_json(t)),
    }
}

/// One row of a deformed-number table.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberRow {
    pub x: Scalar,
    pub value: Scalar,
}

pub fn render_numbers(q: &Scalar, g: &Scalar, rows: &[NumberRow], fmt: Format, decimals: Option<u32>) -> String {
    let shown = |v: &Scalar| match decimals {
        Some(d) => v.truncated(d),
        None => v.to_decimal_string(),
    };
    match fmt {
        Format::Text => {
            let cells: Vec<(String, String)> = rows.iter().map(|r| (r.x.to_decimal_string(), shown(&r.value))).collect();
            let width = cells.iter().map(|(x, _)| x.len()).max().unwrap_or(1).max(1);
            let mut out = format!("{:>width$}  x_q\n", "x");
            for (x, v) in cells {
                out.push_str(&format!("{x:>width$}  {v}\n"));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("x,x_q\n");
            for r in rows {
                out.push_str(&format!("{},{}\n", r.x.to_decimal_string(), shown(&r.value)));
            }
            out
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| json!({"x": dec(&r.x), "value": Value::String(shown(&r.value))}))
                .collect();
            format!("{}\n", json!({"q": dec(q), "g": dec(g), "numbers": items}))
        }
    }
}

fn counterexample_json(c: &Counterexample) -> Value {
    let mut v = json!({});
    if let Some(z) = &c.z {
        v["z"] = dec(z);
    }
    v["x"] = dec(&c.x);
    v["y"] = dec(&c.y);
    v["lhs"] = dec(&c.lhs);
    v["rhs"] = dec(&c.rhs);
    v
}

/// A law report as one JSON object; absent fields are `null`.
pub fn law_report_json(r: &LawReport) -> Value {
    json!({
        "law": r.law.name(),
        "mul": r.mul.map(|m| m.name()),
        "add": r.add.name(),
        "param": real(r.param),
        "holds": r.holds,
        "counterexample": r.counterexample.as_ref().map(counterexample_json),
        "max_residual": format!("{:e}", r.max_residual),
        "samples": r.samples,
        "skipped": r.skipped,
        "note": r.note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdeform_core::laws::{check_distributivity, OpHandle, SampleSpec};
    use qdeform_core::pascal::build_triangle;
    use qdeform_core::DeformParam;

    #[test]
    fn triangle_json_schema() {
        let t = build_triangle(3, &DeformParam::new(Scalar::int(0)).unwrap()).unwrap();
        assert_eq!(
            triangle_json(&t).to_string(),
            r#"{"q":"0","g":"1","mode":"exact","rows":[["1"],["1","1"],["1","3","1"]]}"#
        );
    }

    #[test]
    fn float_triangle_json_keeps_digits() {
        let t = build_triangle(5, &DeformParam::new(Scalar::ratio(3, 2)).unwrap()).unwrap();
        let v = triangle_json(&t);
        assert_eq!(v["mode"], "float");
        assert_eq!(v["q"], "1.5");
        assert_eq!(v["rows"][4][2], "1.96875");
    }

    #[test]
    fn number_tables() {
        let rows = vec![
            NumberRow { x: Scalar::int(-1), value: Scalar::ratio(-1, 2) },
            NumberRow { x: Scalar::int(10), value: Scalar::int(1023) },
        ];
        let (q, g) = (Scalar::int(0), Scalar::int(1));
        assert_eq!(render_numbers(&q, &g, &rows, Format::Csv, None), "x,x_q\n-1,-0.5\n10,1023\n");
        assert_eq!(render_numbers(&q, &g, &rows, Format::Text, None), " x  x_q\n-1  -0.5\n10  1023\n");
        assert_eq!(
            render_numbers(&q, &g, &rows, Format::Json, None),
            "{\"q\":\"0\",\"g\":\"1\",\"numbers\":[{\"x\":\"-1\",\"value\":\"-0.5\"},{\"x\":\"10\",\"value\":\"1023\"}]}\n"
        );
    }

    #[test]
    fn law_report_fields() {
        let spec = SampleSpec::default_for(OpHandle::QProduct, OpHandle::QSum, 0.0, 50, 1);
        let r = check_distributivity(OpHandle::QProduct, OpHandle::QSum, 0.0, &spec).unwrap();
        let v = law_report_json(&r);
        assert_eq!(v["law"], "distributivity");
        assert_eq!(v["mul"], "q_prod");
        assert_eq!(v["holds"], false);
        assert_eq!(v["counterexample"]["z"], "2");
        assert_eq!(v["counterexample"]["lhs"], "4");
        assert_eq!(v["counterexample"]["rhs"], "8");
        assert_eq!(v["param"], "0");
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
        assert_eq!(Format::Csv.to_string(), "csv");
    }
}
