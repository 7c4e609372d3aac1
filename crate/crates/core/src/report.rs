//! Serde helpers: rationals serialize losslessly as `{"num": .., "den": ..}`.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::Rational;

/// Serializable view of a [`Rational`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalRepr(pub Rational);

impl Serialize for RationalRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.end()
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr(*v).serialize(s)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        v.map(RationalRepr).serialize(s)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&RationalRepr(*r))?;
        }
        seq.end()
    }
}

pub mod indexed_rationals {
    use super::*;

    #[derive(Serialize)]
    struct Entry {
        index: u64,
        value: RationalRepr,
    }

    pub fn serialize<S: Serializer>(v: &[(u64, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &(index, r) in v {
            seq.serialize_element(&Entry {
                index,
                value: RationalRepr(r),
            })?;
        }
        seq.end()
    }
}
