use std::fmt;
use std::str::FromStr;

/// A basis element. Keys of different variants never compare equal; the
/// derived order sorts by variant first, then by payload.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Token(String),
    /// A word sequence, possibly empty; the basis of the free monoid algebra.
    Seq(Vec<String>),
    /// A bag of words, stored sorted; the basis of the commutative quotient.
    Multiset(Vec<String>),
    /// A context `(left, right)` around a string.
    CtxPair(Vec<String>, Vec<String>),
    DocId(u64),
    Axis(u64),
}

impl BasisKey {
    pub fn seq<S: AsRef<str>>(words: &[S]) -> Self {
        BasisKey::Seq(words.iter().map(|w| w.as_ref().to_owned()).collect())
    }

    pub fn empty_seq() -> Self {
        BasisKey::Seq(Vec::new())
    }

    pub fn bag<S: AsRef<str>>(words: &[S]) -> Self {
        let mut v: Vec<String> = words.iter().map(|w| w.as_ref().to_owned()).collect();
        v.sort();
        BasisKey::Multiset(v)
    }

    pub fn pair<S: AsRef<str>>(left: &[S], right: &[S]) -> Self {
        BasisKey::CtxPair(
            left.iter().map(|w| w.as_ref().to_owned()).collect(),
            right.iter().map(|w| w.as_ref().to_owned()).collect(),
        )
    }

    /// A tensor-power basis element `e_{i1} ⊗ ... ⊗ e_{in}`, encoded as a
    /// sequence of decimal axis indices. The empty sequence is the scalar
    /// component.
    pub fn axis_seq(axes: &[u64]) -> Self {
        BasisKey::Seq(axes.iter().map(u64::to_string).collect())
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            BasisKey::Token(_) => "token",
            BasisKey::Seq(_) => "seq",
            BasisKey::Multiset(_) => "bag",
            BasisKey::CtxPair(..) => "pair",
            BasisKey::DocId(_) => "doc",
            BasisKey::Axis(_) => "axis",
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Token(w) => write!(f, "tok:{w}"),
            BasisKey::Seq(ws) => write!(f, "seq:{}", ws.join(" ")),
            BasisKey::Multiset(ws) => write!(f, "bag:{}", ws.join(" ")),
            BasisKey::CtxPair(l, r) => write!(f, "pair:{}|{}", l.join(" "), r.join(" ")),
            BasisKey::DocId(d) => write!(f, "doc:{d}"),
            BasisKey::Axis(i) => write!(f, "axis:{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseKeyError(pub String);

impl fmt::Display for ParseKeyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid basis key `{}`", self.0)
    }
}

impl std::error::Error for ParseKeyError {}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

impl FromStr for BasisKey {
    type Err = ParseKeyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseKeyError(s.to_owned());
        let (tag, payload) = s.split_once(':').ok_or_else(err)?;
        match tag.trim() {
            "tok" => {
                let w = payload.trim();
                if w.is_empty() || w.contains(char::is_whitespace) {
                    return Err(err());
                }
                Ok(BasisKey::Token(w.to_owned()))
            }
            "seq" => Ok(BasisKey::Seq(words(payload))),
            "bag" => {
                let mut ws = words(payload);
                ws.sort();
                Ok(BasisKey::Multiset(ws))
            }
            "pair" => {
                let (l, r) = payload.split_once('|').ok_or_else(err)?;
                Ok(BasisKey::CtxPair(words(l), words(r)))
            }
            "doc" => payload
                .trim()
                .parse()
                .map(BasisKey::DocId)
                .map_err(|_| err()),
            "axis" => payload
                .trim()
                .parse()
                .map(BasisKey::Axis)
                .map_err(|_| err()),
            _ => Err(err()),
        }
    }
}
