//! Text formats: tree JSON (`{"n": 4, "edges": [[0,1],[1,2],[1,3]]}`), DOT,
//! and float rendering (17 significant digits for machine output, 6 for
//! human tables).

use std::io;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};
use thiserror::Error;

use super::{Tree, TreeError, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed tree JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
}

#[derive(Serialize, Deserialize)]
struct TreeRecord {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TreeRecord {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = TreeRecord::deserialize(d)?;
        let edges: Vec<_> = rec.edges.iter().map(|&[u, v]| (u, v)).collect();
        Tree::from_edges(rec.n, &edges).map_err(D::Error::custom)
    }
}

/// Compact JSON, byte-identical for equal trees.
pub fn tree_to_json(tree: &Tree) -> String {
    to_json(tree)
}

pub fn tree_from_json(text: &str) -> Result<Tree, FormatError> {
    let rec: TreeRecord = serde_json::from_str(text)?;
    let edges: Vec<_> = rec.edges.iter().map(|&[u, v]| (u, v)).collect();
    Ok(Tree::from_edges(rec.n, &edges)?)
}

pub fn tree_to_dot(tree: &Tree, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in tree.vertices() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in tree.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// `x` with 17 significant digits, plain decimal where reasonable.
pub fn sig17(x: f64) -> String {
    significant(x, 17)
}

/// `x` with 6 significant digits, for tables.
pub fn sig6(x: f64) -> String {
    significant(x, 6)
}

fn significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..(digits as i32)).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let digits_only: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits_only);
    } else {
        let int_len = exp as usize + 1;
        out.push_str(&digits_only[..int_len]);
        if int_len < digits_only.len() {
            out.push('.');
            out.push_str(&digits_only[int_len..]);
        }
    }
    out
}

/// serde_json formatter that writes every float with 17 significant digits.
struct Sig17<F>(F);

impl<F: Formatter> Formatter for Sig17<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(sig17(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn write_with<T: Serialize + ?Sized, F: Formatter>(value: &T, formatter: F) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(formatter));
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, CompactFormatter)
}

/// Indented JSON with 17-significant-digit floats.
pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, PrettyFormatter::new())
}
