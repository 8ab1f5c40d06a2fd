//! The synthesis-schedule graph.
//!
//! Vertices are the letters of the alphabet. For every ordered pair of
//! distinct letters `b -> a` there are `ell` parallel edges, one per allowed
//! synthesis-round duration; the edge of duration `t` stands for a round that
//! writes a run of `a` for `t` time units after a run of `b`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite alphabet of `q >= 2` distinct letter names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.len() < 2 {
            return Err(Error::param("q", letters.len(), "q >= 2"));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::param(
                    "letter",
                    format!("{l:?}"),
                    "non-empty name without whitespace",
                ));
            }
            if letters[..i].contains(l) {
                return Err(Error::param("letters", l, "distinct letter names"));
            }
        }
        Ok(Alphabet { letters })
    }

    /// `A,C,G,T` for `q = 4`, otherwise `A,B,C,...` (or numbers past 26).
    pub fn with_size(q: usize) -> Result<Self> {
        if q == 4 {
            return Alphabet::new(["A", "C", "G", "T"]);
        }
        if q <= 26 {
            Alphabet::new((0..q).map(|i| ((b'A' + i as u8) as char).to_string()))
        } else {
            Alphabet::new((0..q).map(|i| i.to_string()))
        }
    }

    pub fn dna() -> Self {
        Alphabet::with_size(4).expect("valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }
}

/// Labeled multigraph `G` of synthesis rounds with per-pair duration menus.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisGraph {
    alphabet: Alphabet,
    /// Row-major `q x q`; the diagonal entries are empty.
    menus: Vec<Vec<f64>>,
    ell: usize,
    max_duration: f64,
}

impl SynthesisGraph {
    /// Builds a graph where every ordered pair uses the same menu.
    pub fn uniform(alphabet: Alphabet, menu: &[f64], max_duration: f64) -> Result<Self> {
        let q = alphabet.size();
        let mut pairs = BTreeMap::new();
        for b in 0..q {
            for a in 0..q {
                if a != b {
                    pairs.insert((b, a), menu.to_vec());
                }
            }
        }
        SynthesisGraph::from_menus(alphabet, pairs, max_duration)
    }

    /// Builds a graph from one menu per ordered pair `(b, a)`, `b != a`.
    pub fn from_menus(
        alphabet: Alphabet,
        pairs: BTreeMap<(usize, usize), Vec<f64>>,
        max_duration: f64,
    ) -> Result<Self> {
        let q = alphabet.size();
        if !(max_duration.is_finite() && max_duration >= 1.0) {
            return Err(Error::param("M", max_duration, "finite M >= 1"));
        }
        let mut menus = vec![Vec::new(); q * q];
        let mut ell = None;
        for (&(b, a), menu) in &pairs {
            if b >= q || a >= q {
                return Err(Error::InvalidGraph(format!(
                    "pair ({b},{a}) outside alphabet of size {q}"
                )));
            }
            if b == a {
                return Err(Error::InvalidGraph(format!(
                    "self transition {0}>{0} is not allowed",
                    alphabet.name(b)
                )));
            }
            validate_menu(menu, max_duration).map_err(|e| {
                Error::InvalidGraph(format!("{}>{}: {e}", alphabet.name(b), alphabet.name(a)))
            })?;
            match ell {
                None => ell = Some(menu.len()),
                Some(l) if l != menu.len() => {
                    return Err(Error::InvalidGraph(format!(
                        "menu {}>{} has {} durations, expected {l} like the other pairs",
                        alphabet.name(b),
                        alphabet.name(a),
                        menu.len()
                    )))
                }
                Some(_) => {}
            }
            menus[b * q + a] = menu.clone();
        }
        for b in 0..q {
            for a in 0..q {
                if a != b && menus[b * q + a].is_empty() {
                    return Err(Error::InvalidGraph(format!(
                        "missing menu for {}>{}",
                        alphabet.name(b),
                        alphabet.name(a)
                    )));
                }
            }
        }
        Ok(SynthesisGraph {
            alphabet,
            menus,
            ell: ell.unwrap_or(0),
            max_duration,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.size()
    }

    /// Number of durations per ordered pair.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn max_duration(&self) -> f64 {
        self.max_duration
    }

    pub fn menu(&self, from: usize, to: usize) -> &[f64] {
        &self.menus[from * self.q() + to]
    }

    /// Duration of the round writing `to` after `from` with 1-based `index`.
    pub fn duration(&self, from: usize, to: usize, index: usize) -> f64 {
        self.menu(from, to)[index - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.q()
    }

    pub fn edge_count(&self) -> usize {
        self.q() * (self.q() - 1) * self.ell
    }

    /// Returns the shared menu when every pair uses the same durations.
    pub fn uniform_menu(&self) -> Option<&[f64]> {
        let first = self.menu(0, 1);
        let q = self.q();
        (0..q)
            .flat_map(|b| (0..q).filter(move |&a| a != b).map(move |a| (b, a)))
            .all(|(b, a)| self.menu(b, a) == first)
            .then_some(first)
    }

    pub fn shortest_duration(&self) -> f64 {
        self.menus
            .iter()
            .filter_map(|m| m.first())
            .fold(f64::INFINITY, |acc, &t| acc.min(t))
    }

    pub fn is_integral(&self) -> bool {
        self.menus.iter().flatten().all(|t| t.fract() == 0.0)
    }

    /// Integer durations per pair, or an error naming the first fractional one.
    pub fn integer_menus(&self) -> Result<IntegerMenus> {
        let q = self.q();
        let mut menus = Vec::with_capacity(q * q);
        for (i, menu) in self.menus.iter().enumerate() {
            let mut out = Vec::with_capacity(menu.len());
            for &t in menu {
                if t.fract() != 0.0 {
                    return Err(Error::InvalidGraph(format!(
                        "duration {t} of {}>{} is not an integer; rescale the graph first",
                        self.alphabet.name(i / q),
                        self.alphabet.name(i % q)
                    )));
                }
                out.push(t as u64);
            }
            menus.push(out);
        }
        Ok(IntegerMenus { q, menus })
    }

    /// Multiplies every duration (and `M`) by `denominator` and rounds to the
    /// nearest integer, so that real-valued menus can be expanded and counted
    /// in units of `1/denominator`.
    pub fn rescaled(&self, denominator: u32) -> Result<SynthesisGraph> {
        if denominator == 0 {
            return Err(Error::param("denominator", 0, "positive integer"));
        }
        let scale = f64::from(denominator);
        let q = self.q();
        let mut pairs = BTreeMap::new();
        for b in 0..q {
            for a in 0..q {
                if a != b {
                    let menu = self
                        .menu(b, a)
                        .iter()
                        .map(|t| (t * scale).round())
                        .collect();
                    pairs.insert((b, a), menu);
                }
            }
        }
        SynthesisGraph::from_menus(
            self.alphabet.clone(),
            pairs,
            (self.max_duration * scale).round(),
        )
    }

    /// Equivalent ordinary graph with unit-length edges.
    pub fn ordinary_expand(&self) -> Result<OrdinaryGraph> {
        let menus = self.integer_menus()?;
        let q = self.q();
        let mut auxiliary = vec![false; q];
        let mut edges = Vec::new();
        for b in 0..q {
            for a in 0..q {
                for &t in menus.menu(b, a) {
                    let mut from = b;
                    for _ in 1..t {
                        let aux = auxiliary.len();
                        auxiliary.push(true);
                        edges.push(OrdinaryEdge {
                            from,
                            to: aux,
                            label: a,
                        });
                        from = aux;
                    }
                    edges.push(OrdinaryEdge {
                        from,
                        to: a,
                        label: a,
                    });
                }
            }
        }
        Ok(OrdinaryGraph { auxiliary, edges })
    }

    pub fn to_profile(&self) -> GraphProfile {
        let q = self.q();
        let mut menus = BTreeMap::new();
        match self.uniform_menu() {
            Some(m) => {
                menus.insert("default".to_string(), m.to_vec());
            }
            None => {
                for b in 0..q {
                    for a in 0..q {
                        if a != b {
                            let key =
                                format!("{}>{}", self.alphabet.name(b), self.alphabet.name(a));
                            menus.insert(key, self.menu(b, a).to_vec());
                        }
                    }
                }
            }
        }
        GraphProfile {
            q,
            letters: Some(self.alphabet.names().to_vec()),
            max_duration: self.max_duration,
            menus,
        }
    }

    pub fn from_profile(profile: &GraphProfile) -> Result<Self> {
        let alphabet = match &profile.letters {
            Some(names) => {
                if names.len() != profile.q {
                    return Err(Error::InvalidGraph(format!(
                        "q = {} but {} letters given",
                        profile.q,
                        names.len()
                    )));
                }
                Alphabet::new(names.iter().cloned())?
            }
            None => Alphabet::with_size(profile.q)?,
        };
        let q = alphabet.size();
        let default = profile.menus.get("default");
        let mut pairs = BTreeMap::new();
        for (key, menu) in &profile.menus {
            if key == "default" {
                continue;
            }
            let (b, a) = key.split_once('>').ok_or_else(|| {
                Error::InvalidGraph(format!("menu key {key:?} is not of the form \"B>A\""))
            })?;
            let b = alphabet
                .index_of(b)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown letter {b:?} in {key:?}")))?;
            let a = alphabet
                .index_of(a)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown letter {a:?} in {key:?}")))?;
            pairs.insert((b, a), menu.clone());
        }
        for b in 0..q {
            for a in 0..q {
                if a != b && !pairs.contains_key(&(b, a)) {
                    if let Some(d) = default {
                        pairs.insert((b, a), d.clone());
                    }
                }
            }
        }
        SynthesisGraph::from_menus(alphabet, pairs, profile.max_duration)
    }
}

fn validate_menu(menu: &[f64], max_duration: f64) -> std::result::Result<(), String> {
    if menu.is_empty() {
        return Err("empty duration menu".into());
    }
    for (i, &t) in menu.iter().enumerate() {
        if !t.is_finite() || t < 1.0 {
            return Err(format!("duration {t} must be >= 1"));
        }
        if t > max_duration {
            return Err(format!("duration {t} exceeds M = {max_duration}"));
        }
        if i > 0 && t <= menu[i - 1] {
            return Err(format!(
                "durations must be strictly increasing, got {} then {t}",
                menu[i - 1]
            ));
        }
    }
    Ok(())
}

/// Integer view of a graph's menus.
#[derive(Clone, Debug)]
pub struct IntegerMenus {
    q: usize,
    menus: Vec<Vec<u64>>,
}

impl IntegerMenus {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn menu(&self, from: usize, to: usize) -> &[u64] {
        &self.menus[from * self.q + to]
    }
}

/// JSON form of a graph: `{"q":4,"letters":[..],"M":10,"menus":{"default":[1,2],"C>A":[..]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphProfile {
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<String>>,
    #[serde(rename = "M")]
    pub max_duration: f64,
    pub menus: BTreeMap<String, Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrdinaryEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// Unit-edge expansion `G'`. Vertices `0..q` are the letters of `G`; the
/// remaining vertices are auxiliary.
#[derive(Clone, Debug)]
pub struct OrdinaryGraph {
    auxiliary: Vec<bool>,
    edges: Vec<OrdinaryEdge>,
}

impl OrdinaryGraph {
    pub fn vertex_count(&self) -> usize {
        self.auxiliary.len()
    }

    pub fn auxiliary_count(&self) -> usize {
        self.auxiliary.iter().filter(|&&a| a).count()
    }

    pub fn is_auxiliary(&self, v: usize) -> bool {
        self.auxiliary[v]
    }

    pub fn edges(&self) -> &[OrdinaryEdge] {
        &self.edges
    }
}
