// SPDX-License-Identifier: Apache-2.0

//! Drives one NDN forwarder by hand: a FIB route, PIT aggregation of two
//! consumers, the returning Data fanning out, then a Content Store hit.

use std::time::Duration;

use xrpl_ndn_sim::ndn::{DataPacket, FaceId, InterestPacket, Name, NdnNodeState, Strategy};
use xrpl_ndn_sim::{NodeId, SimTime};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut node = NdnNodeState::new(NodeId(0), 64);
    let upstream = FaceId(1);
    node.fib.register("/xrpl/B".parse()?, upstream, Strategy::Unicast);

    let name: Name = "/xrpl/B/val/7".parse()?;
    let lifetime = Duration::from_secs(4);
    let t0 = SimTime::from_secs_f64(1.0);

    let first = node.on_interest(InterestPacket::new(name.clone(), 11, lifetime)?, FaceId(2), t0);
    println!("consumer on face 2: {first:?}");
    let second = node.on_interest(InterestPacket::new(name.clone(), 12, lifetime)?, FaceId(3), t0);
    println!("consumer on face 3 (aggregated): {second:?}");

    let data = DataPacket::new(name.clone(), vec![0xab; 32], Duration::from_secs(10), NodeId(9))?;
    let back = node.on_data(data, upstream, SimTime::from_secs_f64(1.01));
    let faces: Vec<_> = back.iter().filter_map(|e| e.face()).collect();
    println!("data returned to faces {faces:?}");

    let again = node.on_interest(InterestPacket::new(name, 13, lifetime)?, FaceId(4), SimTime::from_secs_f64(2.0));
    println!("late consumer on face 4: {again:?}");
    println!("cs {:?}, counters {:?}", node.cs_stats(), node.counters());
    Ok(())
}
