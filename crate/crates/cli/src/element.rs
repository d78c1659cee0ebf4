//! JSON and text forms of extended elements.
//!
//! Type A components are written as multisegment text, other types as a
//! Lusztig datum `{"word": [..], "coords": [..]}` on the reference word, with
//! 1-based letters.

use std::fmt::Write as _;
use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use extcrystal_core::{BInfinity, BinfElt, CartanDatum, Convention, ExtCrystal, ExtElt, LusztigDatum, MultisegBridge};
use serde_json::{json, Map, Value};

pub struct Ctx {
    pub ext: ExtCrystal,
    pub bridge: Option<MultisegBridge>,
}

impl Ctx {
    pub fn new(ty: &str) -> Result<Self> {
        let cartan = CartanDatum::parse(ty).with_context(|| format!("bad type `{ty}`"))?;
        let binf = BInfinity::new(cartan);
        let bridge = MultisegBridge::new(binf.clone()).ok();
        Ok(Ctx { ext: ExtCrystal::new(binf), bridge })
    }

    pub fn type_name(&self) -> String {
        self.ext.cartan().cartan_type().to_string()
    }

    pub fn rank(&self) -> usize {
        self.ext.rank()
    }

    pub fn component_json(&self, c: &BinfElt) -> Value {
        match &self.bridge {
            Some(br) => Value::String(br.format(c)),
            None => json!({
                "word": self.ext.binf().reference().labels(),
                "coords": c.coords(),
            }),
        }
    }

    pub fn component_text(&self, c: &BinfElt) -> String {
        match &self.bridge {
            Some(br) => br.format(c),
            None => {
                let coords: Vec<String> = c.coords().iter().map(u64::to_string).collect();
                format!("({})", coords.join(","))
            }
        }
    }

    pub fn to_json(&self, b: &ExtElt) -> Value {
        let mut comps = Map::new();
        for (k, c) in b.iter() {
            comps.insert(k.to_string(), self.component_json(c));
        }
        json!({ "type": self.type_name(), "components": comps })
    }

    /// One-line text form `k:comp; k:comp`, or `1` for the highest element.
    pub fn to_text(&self, b: &ExtElt) -> String {
        if b.is_highest() {
            return "1".into();
        }
        let mut s = String::new();
        for (n, (k, c)) in b.iter().enumerate() {
            if n > 0 {
                s.push_str("; ");
            }
            let _ = write!(s, "{k}:{}", self.component_text(c));
        }
        s
    }

    fn parse_component(&self, v: &Value) -> Result<BinfElt> {
        let binf = self.ext.binf();
        match v {
            Value::String(s) => {
                let br = self
                    .bridge
                    .as_ref()
                    .ok_or_else(|| anyhow!("multisegment text needs a type A crystal, got {}", self.type_name()))?;
                Ok(br.parse(s)?)
            }
            Value::Object(o) => {
                let word: Vec<usize> = serde_json::from_value(o.get("word").cloned().unwrap_or(Value::Null))
                    .context("`word` must be a list of node labels")?;
                let coords: Vec<u64> = serde_json::from_value(o.get("coords").cloned().unwrap_or(Value::Null))
                    .context("`coords` must be a list of nonnegative integers")?;
                let conv = match o.get("convention") {
                    None => Convention::Plus,
                    Some(c) => c
                        .as_i64()
                        .and_then(Convention::from_sign)
                        .ok_or_else(|| anyhow!("`convention` must be 1 or -1"))?,
                };
                let word = binf.cartan().reduced_word_from_labels(&word)?;
                Ok(binf.from_datum(&LusztigDatum::new(word, conv, coords)?)?)
            }
            _ => bail!("a component must be a string or an object with `word` and `coords`"),
        }
    }

    pub fn parse_value(&self, v: &Value) -> Result<ExtElt> {
        let obj = v.as_object().ok_or_else(|| anyhow!("element JSON must be an object"))?;
        if let Some(t) = obj.get("type") {
            let t = t.as_str().ok_or_else(|| anyhow!("`type` must be a string"))?;
            let parsed = CartanDatum::parse(t)?;
            if parsed.cartan_type() != self.ext.cartan().cartan_type() {
                bail!("element has type {t} but the crystal is {}", self.type_name());
            }
        }
        let mut comps = Vec::new();
        if let Some(c) = obj.get("components") {
            let c = c.as_object().ok_or_else(|| anyhow!("`components` must be an object"))?;
            for (k, v) in c {
                let pos: i64 = k.trim().parse().with_context(|| format!("component key `{k}` is not an integer"))?;
                let elt = self.parse_component(v).with_context(|| format!("component {k}"))?;
                comps.push((pos, elt));
            }
        }
        Ok(ExtElt::from_components(comps))
    }
}

/// Reads element text given inline, as `@path`, or as `-` for stdin.
pub fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    } else {
        Ok(arg.to_string())
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| anyhow!("invalid JSON at line {}, column {}: {e}", e.line(), e.column()))
}

/// The type named in an element JSON, if any.
pub fn type_of(v: &Value) -> Option<&str> {
    v.get("type").and_then(Value::as_str)
}
