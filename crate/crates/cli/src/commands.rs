//! Subcommand implementations. Each returns the text to print on stdout.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};
use wicks_core::count::{count_table, format_table_csv, format_table_text, surface_table};
use wicks_core::enumerate::{census_metadata, census_to_jsonl, ClassRecord};
use wicks_core::symmetry::automorphisms;
use wicks_core::words::{parse_with_alphabet, Alphabet};
use wicks_core::{
    dual, enumerate_backtrack, extremal_geometry, glue, ih_transform, reduce, validate, vertex_signs, Census,
    EnumerateOptions, Letter, VertexSign, WicksForm, Word,
};

use crate::cache::{cache_dir, constructive, write_atomic};
use crate::{Command, Format, Method};

pub fn run(command: Command) -> Result<String> {
    match command {
        Command::Validate { word, format } => validate_cmd(&word, format),
        Command::Info { word, format } => info_cmd(&word, format),
        Command::Enumerate { genus, method, jobs, out, format, allow_large, no_cache } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .context("starting the worker pool")?;
            let options = EnumerateOptions { allow_large, max_classes: None };
            let cache = if no_cache { None } else { cache_dir() };
            pool.install(|| enumerate_cmd(genus, method, &options, cache.as_deref(), out.as_deref(), format))
        }
        Command::Count { genus, format } => count_cmd(genus, format),
        Command::Table { max_genus, include_genus_3, format } => table_cmd(max_genus, include_genus_3, format),
        Command::Transform { word, edge, format } => transform_cmd(&word, &edge, format),
        Command::Reduce { word, vertex, format } => reduce_cmd(&word, vertex, format),
        Command::Dual { word, format } => dual_cmd(&word, format),
        Command::Geometry { genus, digits, format } => {
            let geo = extremal_geometry(genus, digits)?;
            Ok(render(serde_json::to_value(geo)?, format))
        }
    }
}

/// JSON on one line, or flattened `key: value` / `key,value` lines.
fn render(value: Value, format: Format) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text | Format::Csv => {
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            let sep = if format == Format::Text { ": " } else { "," };
            lines.iter().map(|(k, v)| format!("{k}{sep}{v}\n")).collect()
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn parse_form(text: &str) -> Result<(WicksForm, Alphabet)> {
    let (word, alphabet) = parse_with_alphabet(text)?;
    let form = validate(word).with_context(|| format!("{text:?} is not a Wicks form"))?;
    Ok((form, alphabet))
}

fn parse_maximal(text: &str) -> Result<(WicksForm, Alphabet)> {
    let (form, alphabet) = parse_form(text)?;
    if !form.is_maximal() {
        bail!("{text:?} is a Wicks form of genus {} but not maximal", form.genus());
    }
    Ok((form, alphabet))
}

fn edge_name(alphabet: &Alphabet, base: u32) -> String {
    alphabet.render(&Word::new(vec![Letter::positive(base)]))
}

fn validate_cmd(text: &str, format: Format) -> Result<String> {
    let (form, _) = parse_form(text)?;
    let map = glue(&form);
    Ok(render(
        json!({
            "valid": true,
            "genus": form.genus(),
            "maximal": form.is_maximal(),
            "length": form.len(),
            "edges": map.edges,
            "vertices": map.vertices,
        }),
        format,
    ))
}

fn sign_name(sign: VertexSign) -> &'static str {
    match sign {
        VertexSign::Positive => "+",
        VertexSign::Negative => "-",
    }
}

fn info_cmd(text: &str, format: Format) -> Result<String> {
    let (form, alphabet) = parse_form(text)?;
    let map = glue(&form);
    let profile = automorphisms(&form);
    let mut out = Map::new();
    out.insert("word".into(), json!(alphabet.render(form.word())));
    out.insert("canonical".into(), json!(form.canonical().to_verbose()));
    out.insert("genus".into(), json!(form.genus()));
    out.insert("maximal".into(), json!(form.is_maximal()));
    out.insert("length".into(), json!(form.len()));
    out.insert("edges".into(), json!(map.edges));
    out.insert("vertices".into(), json!(map.vertices));
    out.insert("degrees".into(), json!(map.degrees()));
    out.insert("vertex_cycles".into(), json!(map.vertex_cycles));
    out.insert("aut_order".into(), json!(profile.aut_order));
    out.insert("rotations".into(), json!(profile.rotations));
    let signs = vertex_signs(&form).ok();
    out.insert("pos".into(), json!(signs.as_ref().map(|s| s.positive)));
    out.insert("neg".into(), json!(signs.as_ref().map(|s| s.negative)));
    out.insert(
        "vertex_signs".into(),
        json!(signs.as_ref().map(|s| s.signs.iter().map(|&v| sign_name(v)).collect::<Vec<_>>())),
    );
    out.insert("r".into(), json!(profile.fixed_edges));
    out.insert("s".into(), json!(profile.fixed_vertices.map(|v| v.0)));
    out.insert("t".into(), json!(profile.fixed_vertices.map(|v| v.1)));
    out.insert(
        "order6_stratum".into(),
        json!(profile
            .order6_label()
            .map(|l| format!("({};{},{})", l.fixed_edges, l.fixed_positive, l.fixed_negative))),
    );
    Ok(render(Value::Object(out), format))
}

fn census_csv(census: &Census) -> String {
    let mut out = String::from("genus,word,aut_order,pos,neg,r,s,t\n");
    let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
    for class in &census.classes {
        let r = ClassRecord::from(class);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.genus,
            r.word,
            r.aut_order,
            r.pos,
            r.neg,
            opt(r.r),
            opt(r.s),
            opt(r.t)
        ));
    }
    out
}

fn census_text(census: &Census) -> String {
    census
        .classes
        .iter()
        .map(|class| format!("{}  |Aut|={}\n", class.word().to_verbose(), class.profile.aut_order))
        .collect()
}

fn enumerate_cmd(
    genus: usize,
    method: Method,
    options: &EnumerateOptions,
    cache: Option<&Path>,
    out: Option<&Path>,
    format: Format,
) -> Result<String> {
    options.check_genus(genus)?;
    let census = match method {
        Method::Construct => constructive(genus, options, cache)?,
        Method::Backtrack => enumerate_backtrack(genus)?,
        Method::Both => {
            let built = constructive(genus, options, cache)?;
            let searched = enumerate_backtrack(genus)?;
            if !built.words().eq(searched.words()) {
                bail!(
                    "engines disagree at genus {genus}: {} constructed classes, {} found by backtracking",
                    built.len(),
                    searched.len()
                );
            }
            built
        }
    };
    eprintln!("genus {genus}: {} classes, mass {} (certified)", census.len(), census.mass);
    let body = match format {
        Format::Json => census_to_jsonl(&census),
        Format::Csv => census_csv(&census),
        Format::Text => census_text(&census),
    };
    let Some(path) = out else {
        return Ok(body);
    };
    let mut meta = census_metadata(&census);
    meta["method"] = json!(format!("{method:?}").to_lowercase());
    let meta_text = format!("{meta}\n");
    write_atomic(path, &body)?;
    write_atomic(&sidecar_path(path), &meta_text)?;
    Ok(meta_text)
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn by_order<T: ToString>(values: &[T; 4]) -> Value {
    let mut m = Map::new();
    for (d, v) in [1, 2, 3, 6].iter().zip(values) {
        m.insert(d.to_string(), json!(v.to_string()));
    }
    Value::Object(m)
}

fn count_cmd(genus: usize, format: Format) -> Result<String> {
    let table = count_table(genus)?;
    let ratio = wicks_core::ExactRational::new(table.exactly[0].clone(), table.at_least[0].clone());
    Ok(render(
        json!({
            "genus": genus,
            "m1": table.m1.to_string(),
            "m2": table.m2.to_string(),
            "m3": table.m3.to_string(),
            "m6": table.m6.to_string(),
            "M": by_order(&table.at_least),
            "exact": by_order(&table.exactly),
            "pointed": by_order(&table.pointed),
            "no_symmetry_fraction": ratio.to_string(),
        }),
        format,
    ))
}

fn table_cmd(max_genus: usize, include_genus_3: bool, format: Format) -> Result<String> {
    let rows = surface_table(max_genus, include_genus_3)?;
    Ok(match format {
        Format::Text => format_table_text(&rows),
        Format::Csv => format_table_csv(&rows),
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({"genus": r.genus, "count": r.count.to_string(), "note": r.note}))
                .collect();
            format!("{}\n", Value::Array(rows))
        }
    })
}

fn parse_edge(alphabet: &Alphabet, edge: &str) -> Result<Letter> {
    let (name, inverted) = match edge.trim().strip_suffix('\'') {
        Some(stem) => (stem, true),
        None => (edge.trim(), false),
    };
    let base = alphabet.lookup(name).ok_or_else(|| anyhow!("edge {name:?} does not occur in the word"))?;
    Ok(Letter::new(base, inverted))
}

fn transform_cmd(text: &str, edge: &str, format: Format) -> Result<String> {
    let (form, alphabet) = parse_maximal(text)?;
    let x = parse_edge(&alphabet, edge)?;
    let moved = ih_transform(&form, x)?;
    Ok(render(
        json!({
            "type": moved.move_type,
            "edge": edge.trim(),
            "new_edge": edge_name(&alphabet, moved.new_edge.base()),
            "result": alphabet.render(moved.result.word()),
            "canonical": moved.result.canonical().to_verbose(),
            "isomorphic_to_input": moved.result.canonical() == form.canonical(),
        }),
        format,
    ))
}

fn reduce_cmd(text: &str, vertex: Option<usize>, format: Format) -> Result<String> {
    let (form, alphabet) = parse_maximal(text)?;
    let vertex = match vertex {
        Some(v) => v,
        None => {
            let signs = vertex_signs(&form)?;
            signs
                .signs
                .iter()
                .position(|&s| s == VertexSign::Negative)
                .ok_or_else(|| anyhow!("form has no negative vertex"))?
        }
    };
    let reduced = reduce(&form, vertex)?;
    let cert = &reduced.certificate;
    Ok(render(
        json!({
            "vertex": vertex,
            "type": reduced.reduction_type,
            "parent": alphabet.render(reduced.parent.word()),
            "parent_genus": reduced.parent.genus(),
            "canonical": reduced.parent.canonical().to_verbose(),
            "removed_vertices": cert.removed_vertices,
            "removed_edges": cert.removed_edges.iter().map(|&b| edge_name(&alphabet, b)).collect::<Vec<_>>(),
            "smoothed": cert.smoothed,
        }),
        format,
    ))
}

fn dual_cmd(text: &str, format: Format) -> Result<String> {
    let (form, alphabet) = parse_maximal(text)?;
    let d = dual(&form)?;
    let triangles: Vec<Vec<String>> =
        d.triangles.iter().map(|t| t.iter().map(|&b| edge_name(&alphabet, b)).collect()).collect();
    let edges: Vec<Value> = d
        .edges
        .iter()
        .map(|e| json!({"edge": edge_name(&alphabet, e.base), "triangles": e.triangles}))
        .collect();
    Ok(render(
        json!({
            "genus": d.genus,
            "vertices": d.vertices,
            "triangles": triangles,
            "edges": edges,
            "euler_characteristic": d.euler_characteristic(),
        }),
        format,
    ))
}
