use rand::Rng;

use super::{random_intersection, MobilityScenario, NodePosition, Region, Waypoint};

/// Least-travel-time street route between two intersections, as the list of
/// intersections where the node changes direction (endpoints included).
///
/// Every street shares one speed limit, so the least-time route is any
/// fewest-blocks route. The x leg is travelled first, then the y leg.
pub fn street_route(from: (usize, usize), to: (usize, usize)) -> Vec<(usize, usize)> {
    let mut route = vec![from];
    let corner = (to.0, from.1);
    if corner != from {
        route.push(corner);
    }
    if to != corner {
        route.push(to);
    }
    route
}

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
    let block = region.block_length;
    let mut here = (
        (start.x / block).round() as usize,
        (start.y / block).round() as usize,
    );
    let mut t = 0.0;
    while t < scenario.duration {
        let target = loop {
            let candidate = random_intersection(rng, region);
            if candidate != here {
                break candidate;
            }
        };
        let route = street_route(here, target);
        for pair in route.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let blocks = a.0.abs_diff(b.0) + a.1.abs_diff(b.1);
            t += blocks as f64 * block / scenario.velocity;
            path.push(Waypoint {
                t,
                pos: region.intersection(b.0, b.1),
            });
        }
        if scenario.pause_time > 0.0 {
            t += scenario.pause_time;
            path.push(Waypoint {
                t,
                pos: region.intersection(target.0, target.1),
            });
        }
        here = target;
    }
    path
}
