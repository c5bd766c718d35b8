use super::{DecodedNetwork, Instance, ModelOptions};

/// Total system cost: fixed facility costs, raw material purchase and
/// transport, plant to DC transport, DC holding and DC to retailer
/// transport.
///
/// Holding is charged on on-hand stock. With
/// [`ModelOptions::holding_on_backorder`] it is charged on backlog instead.
pub fn eval_total_cost(net: &DecodedNetwork, inst: &Instance, options: &ModelOptions) -> f64 {
    let mut cost = 0.0;
    for (k, &open) in net.plant_open.iter().enumerate() {
        if open {
            cost += inst.plant_fixed_cost[k];
        }
    }
    for (j, &open) in net.dc_open.iter().enumerate() {
        if open {
            cost += inst.dc_fixed_cost[j];
        }
    }
    for p in 0..net.product_flow.len() {
        for (s, row) in net.raw_flow[p].iter().enumerate() {
            for (k, &r) in row.iter().enumerate() {
                cost += (inst.raw_material_cost[s] + inst.raw_transport_cost[s][k]) * r;
            }
        }
        for (k, row) in net.product_flow[p].iter().enumerate() {
            for (j, &f) in row.iter().enumerate() {
                cost += inst.plant_dc_cost[k][j] * f;
            }
        }
        for (j, dc) in net.schedule[p].iter().enumerate() {
            let base = if options.holding_on_backorder {
                &dc.backlog
            } else {
                &dc.on_hand
            };
            cost += inst.holding_cost[j] * base.iter().sum::<f64>();
        }
        for (j, row) in net.retail_flow[p].iter().enumerate() {
            for (i, &q) in row.iter().enumerate() {
                cost += inst.dc_retailer_cost[j][i] * q;
            }
        }
    }
    cost
}

/// Delivery delay: summed backlog plus early stock over products, DCs and
/// periods.
pub fn eval_delay(net: &DecodedNetwork) -> f64 {
    net.schedule
        .iter()
        .flatten()
        .map(|dc| dc.backlog.iter().sum::<f64>() + dc.on_hand.iter().sum::<f64>())
        .sum()
}

/// Backlog expressed in periods of average demand. Display only.
pub fn mean_delay_periods(net: &DecodedNetwork, inst: &Instance) -> f64 {
    let per_period = inst.total_demand() / inst.periods as f64;
    if per_period <= 0.0 {
        return 0.0;
    }
    let backlog: f64 = net
        .schedule
        .iter()
        .flatten()
        .map(|dc| dc.backlog.iter().sum::<f64>())
        .sum();
    backlog / per_period
}
