use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Star, StarRay};
use crate::geometry::ElementaryGeometry;
use crate::lattice::{LatticeVector, RationalPoint};

#[derive(Serialize, Deserialize)]
struct RawRay {
    dir: LatticeVector,
    weight: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStar {
    #[serde(default)]
    geometry: ElementaryGeometry,
    #[serde(default = "RationalPoint::origin")]
    base: RationalPoint,
    rays: Vec<RawRay>,
    #[serde(default)]
    k: u32,
}

impl Serialize for Star {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawStar {
            geometry: self.geometry.clone(),
            base: self.base.clone(),
            rays: self.rays.iter().map(|r| RawRay { dir: r.dir.clone(), weight: r.weight }).collect(),
            k: self.k,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Star {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawStar::deserialize(d)?;
        let rays = raw.rays.into_iter().map(|r| StarRay::new(r.dir, r.weight)).collect();
        Star::new(raw.geometry, raw.base, rays, raw.k).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let text = r#"{"rays":[{"dir":[1,0,0],"weight":1},{"dir":[0,1,0],"weight":1},{"dir":[-1,-1,0],"weight":1}]}"#;
        let s: Star = serde_json::from_str(text).unwrap();
        assert!(s.is_balanced());
        let out = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Star>(&out).unwrap(), s);
        assert!(serde_json::from_str::<Star>(r#"{"rays":[{"dir":[2,0,0],"weight":1}]}"#).is_err());
    }
}
