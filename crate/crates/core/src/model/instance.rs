use serde::{Deserialize, Serialize};

use super::ModelError;

/// Relative slack used when comparing aggregate capacities to demand.
pub(crate) const CAPACITY_RTOL: f64 = 1e-9;

fn default_currency() -> String {
    "TZS/week".to_string()
}

fn default_time_unit() -> String {
    "day".to_string()
}

/// Parameters of a three-echelon network: suppliers feed plants, plants
/// feed distribution centers (DCs), DCs serve retailers over `periods`
/// time buckets.
///
/// Matrices are row-major in the order their field names read, e.g.
/// `raw_transport_cost[s][k]` is supplier `s` to plant `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_currency")]
    pub currency_unit: String,
    #[serde(default = "default_time_unit")]
    pub time_unit: String,

    pub suppliers: usize,
    pub plants: usize,
    pub dcs: usize,
    pub retailers: usize,
    pub products: usize,
    pub periods: usize,

    /// Raw-material units per horizon, per supplier.
    pub supplier_capacity: Vec<f64>,
    /// Raw-material units per horizon, per plant; bounds `u * output`.
    pub plant_capacity: Vec<f64>,
    /// Holding capacity per DC.
    pub dc_capacity: Vec<f64>,
    /// `demand[i][p][t]`: retailer `i`, product `p`, period `t`.
    pub demand: Vec<Vec<Vec<f64>>>,

    pub plant_fixed_cost: Vec<f64>,
    pub dc_fixed_cost: Vec<f64>,
    pub raw_material_cost: Vec<f64>,
    /// `[supplier][plant]`.
    pub raw_transport_cost: Vec<Vec<f64>>,
    /// `[plant][dc]`.
    pub plant_dc_cost: Vec<Vec<f64>>,
    /// `[dc][retailer]`.
    pub dc_retailer_cost: Vec<Vec<f64>>,
    /// Per unit per period, per DC.
    pub holding_cost: Vec<f64>,
    /// Raw-material units consumed per product unit.
    pub utilization: f64,
    /// `backorder_limit[p][j][t]`.
    pub backorder_limit: Vec<Vec<Vec<f64>>>,
}

impl Instance {
    /// Horizon demand of retailer `i` for product `p`.
    pub fn retailer_demand(&self, i: usize, p: usize) -> f64 {
        self.demand[i][p].iter().sum()
    }

    /// Total demand over retailers, products and periods.
    pub fn total_demand(&self) -> f64 {
        self.demand.iter().flatten().flatten().sum()
    }

    pub fn genotype_len(&self) -> usize {
        super::GenotypeLayout::of(self).len()
    }

    /// Checks every structural and sign invariant, reporting all failures.
    pub fn validate(&self) -> Result<(), ModelError> {
        let mut issues = Vec::new();
        let (s, k, j, i, p, t) = (
            self.suppliers,
            self.plants,
            self.dcs,
            self.retailers,
            self.products,
            self.periods,
        );
        for (name, n) in [
            ("suppliers", s),
            ("plants", k),
            ("dcs", j),
            ("retailers", i),
            ("products", p),
            ("periods", t),
        ] {
            if n == 0 {
                issues.push(format!("{name} must be at least 1"));
            }
        }

        let mut vector = |name: &str, v: &[f64], len: usize| {
            if v.len() != len {
                issues.push(format!("{name}: expected {len} entries, found {}", v.len()));
            }
            if let Some(x) = v.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                issues.push(format!("{name}: entries must be finite and nonnegative, found {x}"));
            }
        };
        vector("supplier_capacity", &self.supplier_capacity, s);
        vector("plant_capacity", &self.plant_capacity, k);
        vector("dc_capacity", &self.dc_capacity, j);
        vector("plant_fixed_cost", &self.plant_fixed_cost, k);
        vector("dc_fixed_cost", &self.dc_fixed_cost, j);
        vector("raw_material_cost", &self.raw_material_cost, s);
        vector("holding_cost", &self.holding_cost, j);

        check_matrix(&mut issues, "raw_transport_cost", &self.raw_transport_cost, s, k);
        check_matrix(&mut issues, "plant_dc_cost", &self.plant_dc_cost, k, j);
        check_matrix(&mut issues, "dc_retailer_cost", &self.dc_retailer_cost, j, i);
        check_tensor(&mut issues, "demand", &self.demand, i, p, t);
        check_tensor(&mut issues, "backorder_limit", &self.backorder_limit, p, j, t);

        if !(self.utilization.is_finite() && self.utilization > 0.0) {
            issues.push(format!("utilization must be positive, found {}", self.utilization));
        }

        if issues.is_empty() {
            let demand = self.total_demand();
            let holding: f64 = self.dc_capacity.iter().sum();
            if demand > holding * (1.0 + CAPACITY_RTOL) {
                issues.push(format!(
                    "capacity constraint for distribution centers violated: total demand {demand} exceeds total DC capacity {holding}"
                ));
            }
        }

        if issues.is_empty() {
            Ok(())
        } else {
            Err(ModelError::Invalid(issues))
        }
    }
}

fn check_matrix(issues: &mut Vec<String>, name: &str, m: &[Vec<f64>], rows: usize, cols: usize) {
    if m.len() != rows {
        issues.push(format!("{name}: expected {rows} rows, found {}", m.len()));
        return;
    }
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            issues.push(format!("{name}[{r}]: expected {cols} entries, found {}", row.len()));
        } else if let Some(x) = row.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            issues.push(format!(
                "{name}[{r}]: entries must be finite and nonnegative, found {x}"
            ));
        }
    }
}

fn check_tensor(issues: &mut Vec<String>, name: &str, m: &[Vec<Vec<f64>>], a: usize, b: usize, c: usize) {
    if m.len() != a {
        issues.push(format!("{name}: expected {a} blocks, found {}", m.len()));
        return;
    }
    for (x, block) in m.iter().enumerate() {
        check_matrix(issues, &format!("{name}[{x}]"), block, b, c);
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// One supplier, plant, DC and retailer over two periods with demand
    /// (5, 5). Every genotype routes 10 units through the single chain.
    pub fn tiny() -> Instance {
        Instance {
            name: "tiny_1x1x1x1".into(),
            currency_unit: default_currency(),
            time_unit: default_time_unit(),
            suppliers: 1,
            plants: 1,
            dcs: 1,
            retailers: 1,
            products: 1,
            periods: 2,
            supplier_capacity: vec![20.0],
            plant_capacity: vec![20.0],
            dc_capacity: vec![10.0],
            demand: vec![vec![vec![5.0, 5.0]]],
            plant_fixed_cost: vec![100.0],
            dc_fixed_cost: vec![50.0],
            raw_material_cost: vec![2.0],
            raw_transport_cost: vec![vec![1.0]],
            plant_dc_cost: vec![vec![3.0]],
            dc_retailer_cost: vec![vec![1.0]],
            holding_cost: vec![0.0],
            utilization: 1.0,
            backorder_limit: vec![vec![vec![5.0, 5.0]]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_fixture_is_valid() {
        fixtures::tiny().validate().unwrap();
    }

    #[test]
    fn excess_demand_names_the_dc_capacity_constraint() {
        let mut inst = fixtures::tiny();
        inst.dc_capacity = vec![9.0];
        let ModelError::Invalid(issues) = inst.validate().unwrap_err() else {
            panic!("expected validation error");
        };
        assert_eq!(issues.len(), 1);
        assert!(issues[0].contains("capacity constraint for distribution centers"));
    }

    #[test]
    fn every_issue_is_listed() {
        let mut inst = fixtures::tiny();
        inst.plant_capacity = vec![1.0, 2.0];
        inst.utilization = 0.0;
        inst.raw_transport_cost = vec![vec![-1.0]];
        let ModelError::Invalid(issues) = inst.validate().unwrap_err() else {
            panic!("expected validation error");
        };
        assert_eq!(issues.len(), 3, "{issues:?}");
    }
}
