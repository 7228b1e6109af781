use rand::Rng;

use super::{MobilityScenario, NodePosition, Region, Waypoint};

pub(super) fn random_point<R: Rng>(rng: &mut R, region: &Region) -> NodePosition {
    let x = rng.gen_range(0.0..=region.width);
    let y = rng.gen_range(0.0..=region.height);
    NodePosition { x, y }
}

/// Straight-line legs to uniformly drawn targets at constant speed, with an
/// optional pause after each arrival.
pub(super) fn trajectory<R: Rng>(
    rng: &mut R,
    region: &Region,
    scenario: &MobilityScenario,
    start: NodePosition,
) -> Vec<Waypoint> {
    let mut path = vec![Waypoint { t: 0.0, pos: start }];
    if scenario.velocity == 0.0 {
        return path;
    }
    let mut t = 0.0;
    let mut here = start;
    while t < scenario.duration {
        let target = random_point(rng, region);
        t += here.distance(&target) / scenario.velocity;
        path.push(Waypoint { t, pos: target });
        if scenario.pause_time > 0.0 {
            t += scenario.pause_time;
            path.push(Waypoint { t, pos: target });
        }
        here = target;
    }
    path
}
