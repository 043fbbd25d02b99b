use serde::de::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, QForm, TruncatedULaurent};

macro_rules! via_string {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(D::Error::custom)
            }
        }
    };
}

via_string!(LaurentPoly);
via_string!(QForm);
via_string!(TruncatedULaurent);
