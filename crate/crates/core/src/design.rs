//! End-to-end design: specification → plan → prototype → band → z-plane → SOS.

use crate::error::Result;
use crate::planner::{plan, DesignPlan, Family, FilterSpec};
use crate::prototype::{
    butterworth_prototype, chebyshev1_prototype, elliptic_prototype, AnalogPrototype,
    EllipticParams,
};
use crate::realization::{zpk_to_sos, SosCascade};
use crate::transform::{bilinear, transform_band, AnalogFilter, DigitalFilter};

#[derive(Debug, Clone)]
pub struct Design {
    pub spec: FilterSpec,
    pub plan: DesignPlan,
    /// Unit-passband-edge low-pass prototype.
    pub prototype: AnalogPrototype,
    pub elliptic: Option<EllipticParams>,
    pub analog: AnalogFilter,
    pub digital: DigitalFilter,
    pub cascade: SosCascade,
}

/// Prototype with its passband edge at 1 rad/s for the planned family/order.
pub fn normalized_prototype(plan: &DesignPlan) -> Result<(AnalogPrototype, Option<EllipticParams>)> {
    match plan.family {
        Family::Butterworth => {
            let proto = butterworth_prototype(plan.order)?;
            Ok((proto.scaled(plan.butterworth_scale()), None))
        }
        Family::Chebyshev1 => Ok((chebyshev1_prototype(plan.order, plan.passband_ripple_db)?, None)),
        Family::Elliptic => {
            let (proto, params) =
                elliptic_prototype(plan.order, plan.passband_ripple_db, plan.stopband_atten_db)?;
            Ok((proto, Some(params)))
        }
    }
}

pub fn design(spec: &FilterSpec) -> Result<Design> {
    let plan = plan(spec)?;
    let (prototype, elliptic) = normalized_prototype(&plan)?;
    let analog = transform_band(&prototype, plan.band, &plan.analog_passband_edges)?;
    let digital = bilinear(&analog, plan.sample_rate)?;
    let cascade = zpk_to_sos(&digital)?;
    Ok(Design { spec: spec.clone(), plan, prototype, elliptic, analog, digital, cascade })
}
