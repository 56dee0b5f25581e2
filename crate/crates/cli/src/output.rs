//! CSV and JSON renderings of sweep results. Both embed the resolved config.

use gravent::experiments::{FrameRow, SweepRow, SweepSpec};
use serde_json::{json, Map, Value};

use crate::config::SweepConfig;

pub const GENERATOR: &str = concat!("gravent ", env!("CARGO_PKG_VERSION"));

pub fn config_json(spec: &SweepSpec) -> String {
    serde_json::to_string(&SweepConfig::from_spec(spec)).expect("config serialises")
}

/// Shortest round-trip form, with an exponent for very small or large values.
fn number(x: f64) -> String {
    format!("{x:?}")
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

/// Header line `<variable>,C,S,concurrence,E,flags` after a `#` comment block
/// holding the generator, the config and any notes.
pub fn sweep_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = format!("# {GENERATOR}\n# config = {}\n", config_json(spec));
    for note in &spec.notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    let mut w = csv_writer();
    w.write_record([spec.variable.name(), "C", "S", "concurrence", "E", "flags"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            number(r.x),
            number(r.c),
            number(r.s),
            number(r.concurrence),
            number(r.e),
            r.flags.join(";"),
        ])
        .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
    out
}

/// `{meta, rows}` with one record per row; missing values are `null`.
pub fn sweep_json(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let records: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert(spec.variable.name().into(), json!(r.x));
            m.insert("C".into(), json!(r.c));
            m.insert("S".into(), json!(r.s));
            m.insert("concurrence".into(), json!(r.concurrence));
            m.insert("E".into(), json!(r.e));
            m.insert("flags".into(), json!(r.flags));
            Value::Object(m)
        })
        .collect();
    let doc = json!({
        "meta": {
            "generator": GENERATOR,
            "config": SweepConfig::from_spec(spec),
        },
        "rows": records,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json serialises");
    text.push('\n');
    text
}

pub fn frame_csv(q: f64, p: f64, rows: &[FrameRow]) -> String {
    let mut out = format!("# {GENERATOR}\n# q = {q}\n# p = {p}\n");
    let mut w = csv_writer();
    w.write_record(["r", "static_rate", "kruskal_rate", "flags"]).expect("in-memory write");
    let opt = |v: Option<f64>| v.map(number).unwrap_or_default();
    for r in rows {
        w.write_record([number(r.r), opt(r.static_rate), opt(r.kruskal_rate), r.flags.join(";")])
            .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
    out
}
