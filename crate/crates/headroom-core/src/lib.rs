//! Simulation of wind/solar curtailment on the GB electricity system and the
//! investment-planning machinery built on top of it.
//!
//! The model replays a year of 5-minute generation records, split into 52
//! weekly blocks, against a flat headroom level (demand less nuclear). At
//! every slot the system accommodates `min(available, headroom)`; the annual
//! mean of the accommodated series drives everything else:
//!
//! * [`model`] — scenario evaluation and per-slot weekly series
//! * [`efficiency`] — incremental wind/solar efficiencies (forward differences)
//! * [`tables`] — efficiency lattices, planning tables, investment lookup
//!   tables and the interpolation between them
//! * [`scenario`] — emissions and decarbonisation reports
//! * [`dynamics`] — weekly deficit/excess accounting and slew-rate detection
//! * [`ingest`] — record parsing, gap filling, normalization and synthesis

pub mod dynamics;
pub mod efficiency;
mod error;
pub mod ingest;
pub mod model;
mod numeric;
pub mod scenario;
pub mod tables;
mod traces;

pub use error::{Error, Result};
pub use ingest::synth::SynthSpec;
pub use ingest::RawRecord;
pub use model::{EvalResult, Scenario, SlotSeries};
pub use tables::{EfficiencyGrid, GridAxes, Lattice, LookupTable, PlanningTable};
pub use traces::{
    Baselines, WeeklyTraceSet, SLOTS_PER_WEEK, SLOTS_PER_YEAR, SLOT_HOURS, WEEKS_PER_YEAR,
};
