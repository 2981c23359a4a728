use serde::ser::{Serialize, SerializeMap, Serializer};

/// Outcome of a validation that carries a witness when it fails.
///
/// Serializes as `{"holds": true}` or `{"holds": false, "witness": ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

impl<W: Serialize> Serialize for Verdict<W> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Holds => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("holds", &true)?;
                map.end()
            }
            Verdict::Fails(w) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("holds", &false)?;
                map.serialize_entry("witness", w)?;
                map.end()
            }
        }
    }
}
