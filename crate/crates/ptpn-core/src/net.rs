use crate::interval::Interval;

pub type PlaceId = usize;
pub type TransitionId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Place {
    pub id: PlaceId,
    pub name: String,
    /// Storage cost per token per time unit.
    pub cost: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub place: PlaceId,
    pub interval: Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub id: TransitionId,
    pub name: String,
    pub cost: u64,
    pub inputs: Vec<Arc>,
    pub outputs: Vec<Arc>,
}

/// A priced timed Petri net.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ptpn {
    pub places: Vec<Place>,
    pub transitions: Vec<Transition>,
    cmax: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("a net needs at least one place")]
    NoPlaces,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arc of transition `{transition}` refers to unknown place index {place}")]
    UnknownPlace { transition: String, place: PlaceId },
}

impl Ptpn {
    /// Validates names and arc targets and renumbers ids densely.
    pub fn new(mut places: Vec<Place>, mut transitions: Vec<Transition>) -> Result<Self, NetError> {
        if places.is_empty() {
            return Err(NetError::NoPlaces);
        }
        let mut seen = std::collections::HashSet::new();
        for name in places.iter().map(|p| &p.name).chain(transitions.iter().map(|t| &t.name)) {
            if !seen.insert(name.clone()) {
                return Err(NetError::DuplicateName(name.clone()));
            }
        }
        for (i, p) in places.iter_mut().enumerate() {
            p.id = i;
        }
        for (i, t) in transitions.iter_mut().enumerate() {
            t.id = i;
            if let Some(a) = t.inputs.iter().chain(&t.outputs).find(|a| a.place >= places.len()) {
                return Err(NetError::UnknownPlace { transition: t.name.clone(), place: a.place });
            }
        }
        let cmax = transitions
            .iter()
            .flat_map(|t| t.inputs.iter().chain(&t.outputs))
            .map(|a| a.interval.max_finite())
            .max()
            .unwrap_or(0);
        Ok(Ptpn { places, transitions, cmax })
    }

    /// Largest finite interval endpoint on any arc, 0 when there are none.
    pub fn cmax(&self) -> u64 {
        self.cmax
    }

    pub fn place_id(&self, name: &str) -> Option<PlaceId> {
        self.places.iter().position(|p| p.name == name)
    }

    pub fn transition_id(&self, name: &str) -> Option<TransitionId> {
        self.transitions.iter().position(|t| t.name == name)
    }

    pub fn place_cost(&self, p: PlaceId) -> u64 {
        self.places[p].cost
    }

    pub fn is_free(&self, p: PlaceId) -> bool {
        self.places[p].cost == 0
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p].name
    }

    pub fn transition_name(&self, t: TransitionId) -> &str {
        &self.transitions[t].name
    }

    /// The same structure with every place and transition cost set to zero.
    pub fn zero_cost_copy(&self) -> Ptpn {
        let mut n = self.clone();
        n.places.iter_mut().for_each(|p| p.cost = 0);
        n.transitions.iter_mut().for_each(|t| t.cost = 0);
        n
    }
}

/// Free-function form of [`Ptpn::cmax`].
pub fn cmax(net: &Ptpn) -> u64 {
    net.cmax()
}

/// Convenience builder used by tests and fixtures.
#[derive(Default)]
pub struct NetBuilder {
    places: Vec<Place>,
    transitions: Vec<Transition>,
}

impl NetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(mut self, name: &str, cost: u64) -> Self {
        let id = self.places.len();
        self.places.push(Place { id, name: name.to_string(), cost });
        self
    }

    /// Adds a transition; arcs name places already added.
    pub fn transition(
        mut self,
        name: &str,
        cost: u64,
        inputs: &[(&str, Interval)],
        outputs: &[(&str, Interval)],
    ) -> Self {
        let resolve = |arcs: &[(&str, Interval)], places: &[Place]| -> Vec<Arc> {
            arcs.iter()
                .map(|(p, i)| Arc {
                    place: places.iter().position(|q| q.name == *p).unwrap_or(usize::MAX),
                    interval: *i,
                })
                .collect()
        };
        let t = Transition {
            id: self.transitions.len(),
            name: name.to_string(),
            cost,
            inputs: resolve(inputs, &self.places),
            outputs: resolve(outputs, &self.places),
        };
        self.transitions.push(t);
        self
    }

    pub fn build(self) -> Result<Ptpn, NetError> {
        Ptpn::new(self.places, self.transitions)
    }
}
