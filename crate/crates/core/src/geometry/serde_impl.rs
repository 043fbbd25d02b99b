use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ElementaryGeometry, GeometryKind, Subkind};
use crate::lattice::LatticeVector;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subkind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    psi: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    psi1: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    psi2: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    collapsed_rays: Option<Vec<LatticeVector>>,
}

fn normalize_name(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).collect()
}

impl Serialize for ElementaryGeometry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawGeometry {
            kind: self.kind.name().to_string(),
            subkind: self.subkind.map(|k| k.name().to_string()),
            psi: self.psi.iter().map(|f| f.to_vec()).collect(),
            psi1: self.psi1.clone(),
            psi2: self.psi2.clone(),
            collapsed_rays: Some(self.collapsed_rays.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementaryGeometry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawGeometry::deserialize(d)?;
        let kind = GeometryKind::from_name(&normalize_name(&raw.kind))
            .ok_or_else(|| D::Error::custom(format!("unknown geometry kind {:?}", raw.kind)))?;
        let subkind = match &raw.subkind {
            None => None,
            Some(s) => Some(Subkind::from_name(s).ok_or_else(|| D::Error::custom(format!("unknown subkind {s:?}")))?),
        };
        let psi = raw
            .psi
            .iter()
            .map(|f| match f.as_slice() {
                [a, b] | [a, b, 0] => Ok([*a, *b]),
                _ => Err(D::Error::custom(format!("psi functional {f:?} must be [a, b] or [a, b, 0]"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ElementaryGeometry::build(kind, subkind, psi, raw.psi1, raw.psi2, raw.collapsed_rays).map_err(D::Error::custom)
    }
}
