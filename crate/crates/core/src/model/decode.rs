//! Genotype to network decoding with proportional capacity repair.

use super::schedule::{deliver_level, simulate_schedule, Schedule};
use super::{GenotypeLayout, Instance, ModelError, ModelOptions};

/// Residual demand below this fraction of the total is considered placed.
const PLACED_RTOL: f64 = 1e-12;

/// Stock trajectory of one DC for one product.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DcSchedule {
    /// Demand of the assigned retailers per period.
    pub demand: Vec<f64>,
    /// Inbound quantities asked for by the timing genes.
    pub requested: Vec<f64>,
    /// Inbound quantities actually delivered by the plants.
    pub inflow: Vec<f64>,
    pub on_hand: Vec<f64>,
    pub backlog: Vec<f64>,
}

/// A concrete network. Flow tensors lead with the product index.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedNetwork {
    pub plant_open: Vec<bool>,
    pub dc_open: Vec<bool>,
    /// `assignment[j][i]`: retailer `i` is served by DC `j`.
    pub assignment: Vec<Vec<bool>>,
    /// `raw_flow[p][s][k]`, raw-material units.
    pub raw_flow: Vec<Vec<Vec<f64>>>,
    /// `product_flow[p][k][j]`.
    pub product_flow: Vec<Vec<Vec<f64>>>,
    /// `retail_flow[p][j][i]`.
    pub retail_flow: Vec<Vec<Vec<f64>>>,
    /// `schedule[p][j]`.
    pub schedule: Vec<Vec<DcSchedule>>,
}

impl DecodedNetwork {
    /// DC serving retailer `i`, if exactly one does.
    pub fn dc_of(&self, i: usize) -> Option<usize> {
        let mut serving = self.assignment.iter().enumerate().filter(|(_, row)| row[i]);
        match (serving.next(), serving.next()) {
            (Some((j, _)), None) => Some(j),
            _ => None,
        }
    }
}

/// Maps a genotype onto a network:
///
/// 1. keys `>= 0.5` open facilities; if none opens, the largest key does;
/// 2. each retailer goes to the open DC with the largest assignment key;
/// 3. DCs ship the full horizon demand of their retailers;
/// 4. DC demand is split over open plants by segment-D weights, capped at
///    plant capacity with the overflow re-spread (closed plants open by key
///    order if capacity runs out);
/// 5. plant raw needs are split over suppliers by segment-C weights, capped
///    at supplier capacity;
/// 6. segment F spreads each DC's inflow over the periods, plants deliver
///    it (at a level rate when [`ModelOptions::level_production`] is set)
///    and the stock recursion yields earliness and tardiness.
pub fn decode(g: &[f64], inst: &Instance, options: &ModelOptions) -> Result<DecodedNetwork, ModelError> {
    let layout = GenotypeLayout::of(inst);
    if g.len() != layout.len() {
        return Err(ModelError::Dimension {
            expected: layout.len(),
            found: g.len(),
        });
    }
    let (ns, nk, nj, ni, np, nt) = (
        inst.suppliers,
        inst.plants,
        inst.dcs,
        inst.retailers,
        inst.products,
        inst.periods,
    );
    let u = inst.utilization;

    let plant_keys: Vec<f64> = (0..nk).map(|k| g[layout.plant_key(k)]).collect();
    let dc_keys: Vec<f64> = (0..nj).map(|j| g[layout.dc_key(j)]).collect();
    let mut plant_open = open_by_key(&plant_keys);
    let dc_open = open_by_key(&dc_keys);

    let mut assignment = vec![vec![false; ni]; nj];
    for i in 0..ni {
        let best = (0..nj)
            .filter(|&j| dc_open[j])
            .fold(None::<usize>, |best, j| match best {
                Some(b) if g[layout.assignment_key(b, i)] >= g[layout.assignment_key(j, i)] => Some(b),
                _ => Some(j),
            })
            .expect("at least one DC is open");
        assignment[best][i] = true;
    }
    let served_by: Vec<usize> = (0..ni)
        .map(|i| (0..nj).find(|&j| assignment[j][i]).expect("assigned"))
        .collect();

    let timing: Vec<Vec<f64>> = (0..nj)
        .map(|j| normalized((0..nt).map(|t| g[layout.timing_weight(j, t)]).collect()))
        .collect();

    let mut raw_flow = Vec::with_capacity(np);
    let mut product_flow = Vec::with_capacity(np);
    let mut retail_flow = Vec::with_capacity(np);
    let mut schedule = Vec::with_capacity(np);

    for p in 0..np {
        let mut q = vec![vec![0.0; ni]; nj];
        let mut dc_demand = vec![0.0; nj];
        let mut dc_period_demand = vec![vec![0.0; nt]; nj];
        for (i, &j) in served_by.iter().enumerate() {
            q[j][i] = inst.retailer_demand(i, p);
            dc_demand[j] += q[j][i];
            for (acc, d) in dc_period_demand[j].iter_mut().zip(&inst.demand[i][p]) {
                *acc += d;
            }
        }

        let plant_cap: Vec<f64> = inst.plant_capacity.iter().map(|d| d / u).collect();
        let f = allocate(
            &dc_demand,
            |k, j| g[layout.plant_weight(k, j)],
            &plant_cap,
            &mut plant_open,
            Some(&plant_keys),
        );

        let raw_need: Vec<f64> = f.iter().map(|row| u * row.iter().sum::<f64>()).collect();
        let mut suppliers_on = vec![true; ns];
        let r = allocate(
            &raw_need,
            |s, k| g[layout.supplier_weight(s, k)],
            &inst.supplier_capacity,
            &mut suppliers_on,
            None,
        );

        let dc_supply: Vec<f64> = (0..nj).map(|j| (0..nk).map(|k| f[k][j]).sum()).collect();
        let requested: Vec<Vec<f64>> = (0..nj)
            .map(|j| timing[j].iter().map(|w| dc_supply[j] * w).collect())
            .collect();
        let inflow = if options.level_production {
            let share: Vec<Vec<f64>> = (0..nk)
                .map(|k| {
                    (0..nj)
                        .map(|j| {
                            if dc_supply[j] > 0.0 {
                                f[k][j] / dc_supply[j]
                            } else {
                                0.0
                            }
                        })
                        .collect()
                })
                .collect();
            let rate: Vec<f64> = plant_cap.iter().map(|c| c / nt as f64).collect();
            deliver_level(&share, &requested, &rate)
        } else {
            requested.clone()
        };

        let mut dcs = Vec::with_capacity(nj);
        for j in 0..nj {
            let Schedule { on_hand, backlog, .. } = simulate_schedule(&inflow[j], &dc_period_demand[j])?;
            dcs.push(DcSchedule {
                demand: std::mem::take(&mut dc_period_demand[j]),
                requested: requested[j].clone(),
                inflow: inflow[j].clone(),
                on_hand,
                backlog,
            });
        }

        raw_flow.push(r);
        product_flow.push(f);
        retail_flow.push(q);
        schedule.push(dcs);
    }

    Ok(DecodedNetwork {
        plant_open,
        dc_open,
        assignment,
        raw_flow,
        product_flow,
        retail_flow,
        schedule,
    })
}

fn open_by_key(keys: &[f64]) -> Vec<bool> {
    let mut open: Vec<bool> = keys.iter().map(|&k| k >= 0.5).collect();
    if !open.iter().any(|&o| o) {
        open[argmax(keys, |_| true).expect("nonempty")] = true;
    }
    open
}

/// Index of the largest key among those passing `eligible`; lowest index on
/// ties.
fn argmax(keys: &[f64], eligible: impl Fn(usize) -> bool) -> Option<usize> {
    (0..keys.len())
        .filter(|&i| eligible(i))
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if keys[b] >= keys[i] => Some(b),
            _ => Some(i),
        })
}

fn normalized(mut w: Vec<f64>) -> Vec<f64> {
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        w.iter_mut().for_each(|x| *x /= total);
    } else {
        let n = w.len() as f64;
        w.iter_mut().for_each(|x| *x = 1.0 / n);
    }
    w
}

/// Splits each sink's demand over the active sources in proportion to
/// `weight(source, sink)`, never loading a source beyond its capacity.
///
/// Overflow from a saturated source is re-spread over the remaining active
/// sources. When every active source is full and demand remains, the
/// inactive source with the largest key is activated (if `keys` is given).
/// Returns `flow[source][sink]`; demand nobody can take stays unplaced.
pub(crate) fn allocate(
    demand: &[f64],
    weight: impl Fn(usize, usize) -> f64,
    capacity: &[f64],
    active: &mut [bool],
    keys: Option<&[f64]>,
) -> Vec<Vec<f64>> {
    let sources = capacity.len();
    let sinks = demand.len();
    let mut flow = vec![vec![0.0; sinks]; sources];
    let mut residual = demand.to_vec();
    let mut room = capacity.to_vec();
    let mut full: Vec<bool> = room.iter().map(|&c| c <= 0.0).collect();
    let placed_tol = PLACED_RTOL * demand.iter().sum::<f64>().max(1.0);

    loop {
        if residual.iter().all(|&r| r <= placed_tol) {
            break;
        }
        let live: Vec<usize> = (0..sources).filter(|&s| active[s] && !full[s]).collect();
        if live.is_empty() {
            let Some(keys) = keys else { break };
            match argmax(keys, |s| !active[s] && !full[s]) {
                Some(s) => {
                    active[s] = true;
                    continue;
                }
                None => break,
            }
        }

        let mut tentative = vec![vec![0.0; sinks]; sources];
        for (sink, &need) in residual.iter().enumerate() {
            if need <= 0.0 {
                continue;
            }
            let total_w: f64 = live.iter().map(|&s| weight(s, sink)).sum();
            for &s in &live {
                let share = if total_w > 0.0 {
                    weight(s, sink) / total_w
                } else {
                    1.0 / live.len() as f64
                };
                tentative[s][sink] = need * share;
            }
        }

        let mut saturated_any = false;
        for &s in &live {
            let load: f64 = tentative[s].iter().sum();
            if load > room[s] {
                let scale = room[s] / load;
                tentative[s].iter_mut().for_each(|x| *x *= scale);
                full[s] = true;
                saturated_any = true;
            }
        }
        for &s in &live {
            for sink in 0..sinks {
                flow[s][sink] += tentative[s][sink];
                residual[sink] -= tentative[s][sink];
            }
            if full[s] {
                room[s] = 0.0;
            } else {
                room[s] -= tentative[s].iter().sum::<f64>();
            }
        }
        if !saturated_any {
            break;
        }
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::fixtures;

    fn open_everything(inst: &Instance) -> Vec<f64> {
        vec![1.0; inst.genotype_len()]
    }

    #[test]
    fn single_chain_carries_all_demand() {
        let inst = fixtures::tiny();
        let net = decode(&open_everything(&inst), &inst, &ModelOptions::default()).unwrap();
        assert_eq!(net.plant_open, vec![true]);
        assert_eq!(net.dc_open, vec![true]);
        assert_eq!(net.retail_flow[0], vec![vec![10.0]]);
        assert_eq!(net.product_flow[0], vec![vec![10.0]]);
        assert_eq!(net.raw_flow[0], vec![vec![10.0]]);
        assert_eq!(net.schedule[0][0].inflow, vec![5.0, 5.0]);
    }

    #[test]
    fn all_zero_genotype_forces_one_plant_and_one_dc() {
        let mut inst = fixtures::tiny();
        inst.plants = 3;
        inst.dcs = 2;
        inst.plant_capacity = vec![20.0; 3];
        inst.dc_capacity = vec![10.0; 2];
        inst.plant_fixed_cost = vec![1.0; 3];
        inst.dc_fixed_cost = vec![1.0; 2];
        inst.holding_cost = vec![0.0; 2];
        inst.raw_transport_cost = vec![vec![1.0; 3]];
        inst.plant_dc_cost = vec![vec![1.0; 2]; 3];
        inst.dc_retailer_cost = vec![vec![1.0]; 2];
        inst.backorder_limit = vec![vec![vec![5.0, 5.0]; 2]];
        inst.validate().unwrap();
        let g = vec![0.0; inst.genotype_len()];
        let net = decode(&g, &inst, &ModelOptions::default()).unwrap();
        assert_eq!(net.plant_open.iter().filter(|&&o| o).count(), 1);
        assert_eq!(net.dc_open.iter().filter(|&&o| o).count(), 1);
        assert_eq!(net.plant_open, vec![true, false, false]);
        assert_eq!(net.dc_of(0), Some(0));
    }

    #[test]
    fn repair_caps_small_plant_and_routes_rest() {
        // DC demand 100 split evenly by weight; plant 0 can only make 30.
        let mut active = vec![true, true];
        let f = allocate(&[100.0], |_, _| 0.5, &[30.0, 100.0], &mut active, Some(&[0.9, 0.8]));
        assert_eq!(f, vec![vec![30.0], vec![70.0]]);
    }

    #[test]
    fn repair_opens_closed_plant_when_capacity_runs_out() {
        let mut active = vec![true, false];
        let f = allocate(&[50.0], |_, _| 1.0, &[20.0, 100.0], &mut active, Some(&[0.7, 0.2]));
        assert_eq!(active, vec![true, true]);
        assert_eq!(f, vec![vec![20.0], vec![30.0]]);
    }

    #[test]
    fn allocation_follows_weights_when_unconstrained() {
        let mut active = vec![true, true];
        let f = allocate(
            &[40.0, 10.0],
            |s, _| if s == 0 { 3.0 } else { 1.0 },
            &[1e9, 1e9],
            &mut active,
            None,
        );
        assert_eq!(f, vec![vec![30.0, 7.5], vec![10.0, 2.5]]);
    }

    #[test]
    fn wrong_length_is_dimension_error() {
        let inst = fixtures::tiny();
        let err = decode(&[0.5; 3], &inst, &ModelOptions::default()).unwrap_err();
        assert!(matches!(err, ModelError::Dimension { expected: 7, found: 3 }));
    }

    #[test]
    fn timing_genes_shape_requested_inflow() {
        let inst = fixtures::tiny();
        let mut g = open_everything(&inst);
        let off = GenotypeLayout::of(&inst).timing_offset();
        g[off] = 1.0;
        g[off + 1] = 0.0;
        let net = decode(&g, &inst, &ModelOptions::default()).unwrap();
        let s = &net.schedule[0][0];
        assert_eq!(s.inflow, vec![10.0, 0.0]);
        assert_eq!(s.on_hand, vec![5.0, 0.0]);
    }
}
