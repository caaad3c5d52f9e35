use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result, Sort};

/// Index of a data symbol in the domain of a [`CellEnv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Datum(pub u16);

/// A deterministic cell: a total function table over `D^m -> D^n` plus the
/// output tuple it offers on the initial tick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDef {
    pub sort: Sort,
    pub init: Vec<Datum>,
    /// Output tuples indexed by the input tuple read as a base-|D| numeral,
    /// first port most significant.
    table: Vec<Vec<Datum>>,
}

impl CellDef {
    /// Builds a cell by tabulating `f` over all input tuples.
    pub fn from_fn(
        sort: Sort,
        domain_size: usize,
        init: Vec<Datum>,
        mut f: impl FnMut(&[Datum]) -> Vec<Datum>,
    ) -> Result<Self> {
        let rows = domain_size.pow(sort.inputs as u32);
        let mut table = Vec::with_capacity(rows);
        let mut tuple = alloc::vec![Datum(0); sort.inputs];
        for row in 0..rows {
            decode(row, domain_size, &mut tuple);
            table.push(f(&tuple));
        }
        let def = CellDef { sort, init, table };
        def.validate(domain_size)?;
        Ok(def)
    }

    fn validate(&self, domain_size: usize) -> Result<()> {
        let in_domain = |t: &[Datum]| t.iter().all(|d| usize::from(d.0) < domain_size);
        if self.init.len() != self.sort.outputs {
            return Err(Error::BadShape(format!(
                "initial tuple has {} entries, cell has {} outputs",
                self.init.len(),
                self.sort.outputs
            )));
        }
        if !in_domain(&self.init) {
            return Err(Error::BadShape("initial tuple outside the domain".into()));
        }
        for row in &self.table {
            if row.len() != self.sort.outputs || !in_domain(row) {
                return Err(Error::BadShape(
                    "table row has wrong arity or leaves the domain".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn apply(&self, inputs: &[Datum], domain_size: usize) -> &[Datum] {
        debug_assert_eq!(inputs.len(), self.sort.inputs);
        let index = inputs
            .iter()
            .fold(0usize, |acc, d| acc * domain_size + usize::from(d.0));
        &self.table[index]
    }
}

fn decode(mut index: usize, base: usize, out: &mut [Datum]) {
    for slot in out.iter_mut().rev() {
        *slot = Datum((index % base) as u16);
        index /= base;
    }
}

/// Finite data domain together with the named deterministic cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellEnv {
    domain: Vec<String>,
    cells: BTreeMap<String, CellDef>,
}

impl Default for CellEnv {
    /// Single-symbol domain `{"0"}` without cells.
    fn default() -> Self {
        CellEnv {
            domain: alloc::vec!["0".to_string()],
            cells: BTreeMap::new(),
        }
    }
}

impl CellEnv {
    pub fn new(domain: Vec<String>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::BadShape("data domain must be nonempty".into()));
        }
        if domain.len() > usize::from(u16::MAX) {
            return Err(Error::BadShape("data domain too large".into()));
        }
        let mut seen = domain.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != domain.len() {
            return Err(Error::BadShape("duplicate data symbol".into()));
        }
        Ok(CellEnv {
            domain,
            cells: BTreeMap::new(),
        })
    }

    /// Domain `{"0", ..., "k-1"}`.
    pub fn numeric(size: usize) -> Result<Self> {
        CellEnv::new((0..size).map(|i| i.to_string()).collect())
    }

    /// Numeric domain of size `k` with the cell `succ<k>`: `x -> x+1 mod k`,
    /// initial output 0.
    pub fn succ_mod(k: usize) -> Self {
        let mut env = CellEnv::numeric(k).expect("k > 0");
        let def = CellDef::from_fn(Sort::new(1, 1), k, alloc::vec![Datum(0)], |x| {
            alloc::vec![Datum(((usize::from(x[0].0) + 1) % k) as u16)]
        })
        .expect("well-formed successor");
        env.insert(format!("succ{k}"), def).expect("fresh name");
        env
    }

    pub fn insert(&mut self, name: String, def: CellDef) -> Result<()> {
        def.validate(self.domain.len())?;
        if def.table.len() != self.domain.len().pow(def.sort.inputs as u32) {
            return Err(Error::BadShape(format!("table of `{name}` is not total")));
        }
        self.cells.insert(name, def);
        Ok(())
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn symbol(&self, d: Datum) -> &str {
        &self.domain[usize::from(d.0)]
    }

    pub fn datum(&self, symbol: &str) -> Option<Datum> {
        self.domain
            .iter()
            .position(|s| s == symbol)
            .map(|i| Datum(i as u16))
    }

    pub fn cell(&self, name: &str) -> Option<&CellDef> {
        self.cells.get(name)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&str, &CellDef)> {
        self.cells.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Output tuple of the named cell for `inputs`.
    pub fn apply(&self, name: &str, inputs: &[Datum]) -> Option<&[Datum]> {
        self.cells
            .get(name)
            .map(|c| c.apply(inputs, self.domain.len()))
    }
}
