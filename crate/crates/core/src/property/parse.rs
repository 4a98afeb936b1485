//! Property names (`triangle-free`, `Kt-free(4)`, `local(acyclic,3)`, ...) and
//! the JSON property definition file.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{and_bounded_degree, localize, Builtin, PropertyKind, PropertySpec};
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, write_graph6};

/// Property names understood by [`PropertySpec::from_name`].
pub const BUILTIN_NAMES: &[&str] = &[
    "emptiness",
    "triangle-free",
    "Kt-free(t)",
    "Pt-free(t)",
    "Ct-free(t)",
    "acyclic",
    "bipartite",
    "planar",
    "k-colorable(k)",
    "bounded-degree(d)",
    "local(<name>)",
    "local(<name>,d)",
    "connected",
    "perfect-matching",
    "st-connected(s,t)",
];

fn unknown(text: &str) -> Error {
    Error::UnknownProperty(text.to_string())
}

/// Splits `head(a,b(c,d))` into `head` and top-level arguments.
fn split_call(text: &str) -> Result<(&str, Vec<&str>)> {
    let Some(open) = text.find('(') else {
        return Ok((text, Vec::new()));
    };
    let inner = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| unknown(text))?;
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(unknown(text));
        }
    }
    if depth != 0 {
        return Err(unknown(text));
    }
    args.push(inner[start..].trim());
    Ok((text[..open].trim(), args))
}

fn numbers(text: &str, args: &[&str], count: usize) -> Result<Vec<usize>> {
    if args.len() != count {
        return Err(Error::Property {
            name: text.to_string(),
            reason: format!("expected {count} argument(s)"),
        });
    }
    args.iter()
        .map(|a| {
            a.parse::<usize>().map_err(|_| Error::Property {
                name: text.to_string(),
                reason: format!("`{a}` is not a non-negative integer"),
            })
        })
        .collect()
}

/// `K4-free` style shorthand: letter, digits, `-free`.
fn shorthand(text: &str, letter: char, suffix: &str) -> Option<usize> {
    text.strip_prefix(letter)?.strip_suffix(suffix)?.parse().ok()
}

impl PropertySpec {
    /// Parses a built-in property name such as `triangle-free`, `Kt-free(4)`,
    /// `K4-free`, `k-colorable(3)`, `local(acyclic)` or `local(emptiness,2)`.
    pub fn from_name(text: &str) -> Result<PropertySpec> {
        let text = text.trim();
        if let Some(t) = shorthand(text, 'K', "-free") {
            return PropertySpec::clique_free(t);
        }
        if let Some(t) = shorthand(text, 'P', "-free") {
            return PropertySpec::path_free(t);
        }
        if let Some(t) = shorthand(text, 'C', "-free") {
            return PropertySpec::cycle_free(t);
        }
        if let Some(k) = text.strip_suffix("-colorable").and_then(|k| k.parse().ok()) {
            return Ok(PropertySpec::colorable(k));
        }
        let (head, args) = split_call(text)?;
        match head {
            "emptiness" | "independence" if args.is_empty() => Ok(PropertySpec::emptiness()),
            "triangle-free" if args.is_empty() => Ok(PropertySpec::triangle_free()),
            "acyclic" if args.is_empty() => Ok(PropertySpec::acyclic()),
            "bipartite" if args.is_empty() => Ok(PropertySpec::bipartite()),
            "planar" if args.is_empty() => Ok(PropertySpec::planar()),
            "connected" if args.is_empty() => Ok(PropertySpec::connected()),
            "perfect-matching" if args.is_empty() => Ok(PropertySpec::perfect_matching()),
            "Kt-free" => PropertySpec::clique_free(numbers(text, &args, 1)?[0]),
            "Pt-free" => PropertySpec::path_free(numbers(text, &args, 1)?[0]),
            "Ct-free" => PropertySpec::cycle_free(numbers(text, &args, 1)?[0]),
            "k-colorable" => Ok(PropertySpec::colorable(numbers(text, &args, 1)?[0])),
            "bounded-degree" => Ok(PropertySpec::bounded_degree(numbers(text, &args, 1)?[0])),
            "st-connected" => {
                let st = numbers(text, &args, 2)?;
                if st[0] == st[1] {
                    return Err(Error::Property {
                        name: text.to_string(),
                        reason: "s and t must differ".into(),
                    });
                }
                Ok(PropertySpec::st_connected(st[0], st[1]))
            }
            "local" => match args.as_slice() {
                [inner] => localize(&PropertySpec::from_name(inner)?),
                [inner, d] => {
                    let d = numbers(text, &[d], 1)?[0];
                    Ok(and_bounded_degree(&localize(&PropertySpec::from_name(inner)?)?, d))
                }
                _ => Err(unknown(text)),
            },
            _ => Err(unknown(text)),
        }
    }

    /// Resolves `@path` as a property file and anything else as a built-in name.
    pub fn resolve(text: &str) -> Result<PropertySpec> {
        match text.strip_prefix('@') {
            Some(path) => PropertyFile::load(path)?.into_spec(),
            None => PropertySpec::from_name(text),
        }
    }
}

/// On-disk property definition.
///
/// ```json
/// {"name": "no-c4", "kind": "forbidden", "forbidden": ["Cl"]}
/// {"name": "3col", "kind": "builtin", "builtin": "k-colorable", "params": [3], "declared_dp": 3}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFile {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_dp: Option<usize>,
}

impl PropertyFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn into_spec(self) -> Result<PropertySpec> {
        let bad = |reason: &str| Error::Property {
            name: self.name.clone(),
            reason: reason.to_string(),
        };
        match self.kind.as_str() {
            "forbidden" => {
                let family = self
                    .forbidden
                    .as_ref()
                    .ok_or_else(|| bad("forbidden kind needs a `forbidden` list"))?
                    .iter()
                    .map(|s| parse_graph6(s.as_bytes()))
                    .collect::<Result<Vec<_>>>()?;
                PropertySpec::forbidden(self.name.clone(), family)
            }
            "builtin" => {
                let id_name = self.builtin.as_deref().ok_or_else(|| bad("builtin kind needs `builtin`"))?;
                let p = &self.params;
                let arity = |k: usize| -> Result<()> {
                    if p.len() == k {
                        Ok(())
                    } else {
                        Err(bad(&format!("`{id_name}` takes {k} parameter(s)")))
                    }
                };
                let id = match id_name {
                    "acyclic" => arity(0).map(|_| Builtin::Acyclic)?,
                    "bipartite" => arity(0).map(|_| Builtin::Bipartite)?,
                    "planar" => arity(0).map(|_| Builtin::Planar)?,
                    "k-colorable" => arity(1).map(|_| Builtin::Colorable(p[0]))?,
                    "bounded-degree" => arity(1).map(|_| Builtin::BoundedDegree(p[0]))?,
                    "connected" => arity(0).map(|_| Builtin::Connected)?,
                    "perfect-matching" => arity(0).map(|_| Builtin::PerfectMatching)?,
                    "st-connected" => arity(2).map(|_| Builtin::StConnected(p[0], p[1]))?,
                    _ => return Err(bad(&format!("unknown builtin `{id_name}`"))),
                };
                if self.declared_dp.is_some() && !id.is_hereditary() {
                    return Err(bad("declared_dp is only meaningful for hereditary builtins"));
                }
                Ok(PropertySpec {
                    name: self.name.clone(),
                    kind: PropertyKind::Builtin {
                        id,
                        declared_dp: self.declared_dp,
                    },
                })
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }

    /// The file form of a forbidden-family or builtin property.
    pub fn from_spec(p: &PropertySpec) -> Result<Self> {
        let mut file = PropertyFile {
            name: p.name.clone(),
            kind: String::new(),
            forbidden: None,
            builtin: None,
            params: Vec::new(),
            declared_dp: None,
        };
        match &p.kind {
            PropertyKind::Forbidden(family) => {
                file.kind = "forbidden".into();
                file.forbidden = Some(family.iter().map(write_graph6).collect());
            }
            PropertyKind::Builtin { id, declared_dp } => {
                file.kind = "builtin".into();
                let (name, params) = match *id {
                    Builtin::Acyclic => ("acyclic", vec![]),
                    Builtin::Bipartite => ("bipartite", vec![]),
                    Builtin::Planar => ("planar", vec![]),
                    Builtin::Colorable(k) => ("k-colorable", vec![k]),
                    Builtin::BoundedDegree(d) => ("bounded-degree", vec![d]),
                    Builtin::Connected => ("connected", vec![]),
                    Builtin::PerfectMatching => ("perfect-matching", vec![]),
                    Builtin::StConnected(s, t) => ("st-connected", vec![s, t]),
                };
                file.builtin = Some(name.into());
                file.params = params;
                file.declared_dp = *declared_dp;
            }
            _ => {
                return Err(Error::Property {
                    name: p.name.clone(),
                    reason: "composite properties have no file form; use the name syntax".into(),
                })
            }
        }
        Ok(file)
    }
}
