#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "govsim/rng.hpp"
#include "govsim/sim.hpp"
#include "govsim/sprawl.hpp"

using namespace govsim;

namespace {

Agent make_agent(AgentId id, int capability = 0) {
  Agent a;
  a.id = id;
  a.capability = Capability(capability);
  a.baseline_permissions = baseline_permissions_for(a.capability);
  a.granted_permissions = a.baseline_permissions;
  return a;
}

int baseline_permissions_check(Capability c) { return 3 + c.slot() % 3; }

}  // namespace

TEST_CASE("clean fleet carries no flags") {
  std::vector<Agent> agents;
  for (AgentId i = 0; i < 30; ++i) agents.push_back(make_agent(i, static_cast<int>(i)));
  const PatternFlags flags = detect_patterns(agents);
  CHECK(flags.flagged_union == 0);
  for (SprawlPattern p : kAllSprawlPatterns) CHECK(flags.count(p) == 0);
  CHECK(sprawl_index(flags, 30) == 0.0);
}

TEST_CASE("SP-01 flags every holder of an over-planned capability") {
  // Two live registered agents on one capability with plan 1.
  std::vector<Agent> agents = {make_agent(0, 4), make_agent(1, 4), make_agent(2, 5)};
  const PatternFlags flags = detect_patterns(agents);
  CHECK(flags.has(0, SprawlPattern::FunctionalDuplication));
  CHECK(flags.has(1, SprawlPattern::FunctionalDuplication));
  CHECK_FALSE(flags.has(2, SprawlPattern::FunctionalDuplication));
  CHECK(flags.count(SprawlPattern::FunctionalDuplication) == 2);

  SECTION("unregistered holders neither count toward nor receive the flag") {
    agents[1].is_shadow = true;
    agents[1].registered = false;
    const PatternFlags f2 = detect_patterns(agents);
    CHECK(f2.count(SprawlPattern::FunctionalDuplication) == 0);
  }

  SECTION("retired holders do not count") {
    agents[1].is_retired = true;
    const PatternFlags f2 = detect_patterns(agents);
    CHECK(f2.count(SprawlPattern::FunctionalDuplication) == 0);
  }
}

TEST_CASE("SP-02 flags live unregistered agents") {
  std::vector<Agent> agents = {make_agent(0), make_agent(1, 1)};
  agents[1].is_shadow = true;
  agents[1].registered = false;
  const PatternFlags flags = detect_patterns(agents);
  CHECK_FALSE(flags.has(0, SprawlPattern::ShadowAgent));
  CHECK(flags.has(1, SprawlPattern::ShadowAgent));

  agents[1].is_retired = true;
  CHECK(detect_patterns(agents).count(SprawlPattern::ShadowAgent) == 0);
}

TEST_CASE("SP-03 flags live orphans only") {
  std::vector<Agent> agents = {make_agent(0), make_agent(1, 1)};
  agents[1].is_orphaned = true;
  CHECK(detect_patterns(agents).has(1, SprawlPattern::OrphanedAgent));

  agents[1].is_retired = true;
  CHECK(detect_patterns(agents).count(SprawlPattern::OrphanedAgent) == 0);
}

TEST_CASE("SP-04 flags permissions granted beyond baseline") {
  std::vector<Agent> agents = {make_agent(0), make_agent(1, 1)};
  agents[1].granted_permissions = agents[1].baseline_permissions + 2;
  const PatternFlags flags = detect_patterns(agents);
  CHECK_FALSE(flags.has(0, SprawlPattern::PermissionCreep));
  CHECK(flags.has(1, SprawlPattern::PermissionCreep));
}

TEST_CASE("SP-05 flags agents with unremediated unsafe-hop originations") {
  std::vector<Agent> agents = {make_agent(0), make_agent(1, 1)};
  agents[0].unsafe_hops_originated = 1;
  const PatternFlags flags = detect_patterns(agents);
  CHECK(flags.has(0, SprawlPattern::UnmonitoredDelegation));
  CHECK_FALSE(flags.has(1, SprawlPattern::UnmonitoredDelegation));
}

TEST_CASE("sprawl index counts the union of flagged agents") {
  // 10 shadow + 8 orphaned with 3 agents carrying both, out of 30.
  std::vector<Agent> agents;
  for (AgentId i = 0; i < 30; ++i) agents.push_back(make_agent(i, static_cast<int>(i)));
  for (AgentId i = 0; i < 10; ++i) {
    agents[i].is_shadow = true;
    agents[i].registered = false;
  }
  for (AgentId i = 7; i < 15; ++i) agents[i].is_orphaned = true;
  const PatternFlags flags = detect_patterns(agents);
  CHECK(flags.count(SprawlPattern::ShadowAgent) == 10);
  CHECK(flags.count(SprawlPattern::OrphanedAgent) == 8);
  CHECK(flags.flagged_union == 15);
  CHECK(sprawl_index(flags, 30) == 0.5);

  CHECK_THROWS_AS(sprawl_index(flags, 0), std::invalid_argument);
}

TEST_CASE("sprawl index union matches brute force on random small fleets") {
  RngState rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_index(10));
    std::vector<Agent> agents;
    for (int i = 0; i < n; ++i) {
      Agent a = make_agent(static_cast<AgentId>(i),
                           static_cast<int>(rng.next_index(kCapabilityCount)));
      if (rng.next_bernoulli(0.3)) {
        a.is_shadow = true;
        a.registered = false;
      }
      if (rng.next_bernoulli(0.3)) a.is_orphaned = true;
      if (rng.next_bernoulli(0.2)) a.granted_permissions += 1;
      if (rng.next_bernoulli(0.2)) a.unsafe_hops_originated = 1;
      if (rng.next_bernoulli(0.1)) a.is_retired = true;
      agents.push_back(a);
    }
    const PatternFlags flags = detect_patterns(agents);

    // Brute force: per-agent re-derivation of each rule, then set union.
    const int plan = staffing_plan_per_capability(n);
    int union_count = 0;
    std::array<int, 5> per_pattern{};
    for (const Agent& a : agents) {
      int holders = 0;
      for (const Agent& b : agents)
        if (!b.is_retired && b.registered && b.capability == a.capability) ++holders;
      const bool sp1 = !a.is_retired && a.registered && holders > plan;
      const bool sp2 = !a.is_retired && !a.registered;
      const bool sp3 = !a.is_retired && a.is_orphaned;
      const bool sp4 = a.granted_permissions > a.baseline_permissions;
      const bool sp5 = a.unsafe_hops_originated > 0;
      per_pattern[0] += sp1;
      per_pattern[1] += sp2;
      per_pattern[2] += sp3;
      per_pattern[3] += sp4;
      per_pattern[4] += sp5;
      if (sp1 || sp2 || sp3 || sp4 || sp5) ++union_count;
    }
    REQUIRE(flags.flagged_union == union_count);
    for (std::size_t p = 0; p < 5; ++p)
      REQUIRE(flags.pattern_counts[p] == per_pattern[p]);
    REQUIRE(sprawl_index(flags, n) >= 0.0);
    REQUIRE(sprawl_index(flags, n) <= 1.0);
  }
}

TEST_CASE("sprawl index is invariant under agent reordering") {
  RngState rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_index(8));
    std::vector<Agent> agents;
    for (int i = 0; i < n; ++i) {
      Agent a = make_agent(static_cast<AgentId>(i),
                           static_cast<int>(rng.next_index(kCapabilityCount)));
      if (rng.next_bernoulli(0.4)) {
        a.is_shadow = true;
        a.registered = false;
      }
      if (rng.next_bernoulli(0.3)) a.is_orphaned = true;
      if (rng.next_bernoulli(0.2)) ++a.granted_permissions;
      agents.push_back(a);
    }
    const double si = sprawl_index(detect_patterns(agents), n);

    // Fisher-Yates shuffle, then relabel ids to match the new positions.
    std::vector<Agent> shuffled = agents;
    for (std::size_t i = shuffled.size() - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[rng.next_index(i + 1)]);
    for (std::size_t i = 0; i < shuffled.size(); ++i)
      shuffled[i].id = static_cast<AgentId>(i);

    REQUIRE(sprawl_index(detect_patterns(shuffled), n) == si);
  }
}

TEST_CASE("sprawl cost breakdown") {
  UnitCosts unit;  // all rates default to 1.0

  SECTION("all-zero counts cost nothing") {
    const SprawlCostBreakdown c = sprawl_cost(SprawlCounts{}, unit);
    CHECK(c.redundancy == 0.0);
    CHECK(c.security == 0.0);
    CHECK(c.compliance == 0.0);
    CHECK(c.operational == 0.0);
    CHECK(c.opportunity == 0.0);
    CHECK(c.total == 0.0);
  }

  SECTION("hand-computed example") {
    SprawlCounts counts;
    counts.duplicate_agents = 2;
    counts.shadow_agents = 3;
    counts.creeped_permissions = 4;
    counts.incidents = 5;
    counts.orphaned_agents = 1;
    counts.lost_tasks = 10;
    const SprawlCostBreakdown c = sprawl_cost(counts, unit);
    CHECK(c.redundancy == 2.0);
    CHECK(c.security == 7.0);
    CHECK(c.compliance == 5.0);
    CHECK(c.operational == 1.0);
    CHECK(c.opportunity == 10.0);
    CHECK(c.total == 25.0);
  }

  SECTION("linear in rates and counts") {
    RngState rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      SprawlCounts counts;
      counts.duplicate_agents = static_cast<int>(rng.next_index(20));
      counts.shadow_agents = static_cast<int>(rng.next_index(20));
      counts.creeped_permissions = static_cast<int>(rng.next_index(20));
      counts.incidents = static_cast<int>(rng.next_index(50));
      counts.orphaned_agents = static_cast<int>(rng.next_index(20));
      counts.lost_tasks = static_cast<int>(rng.next_index(100));

      UnitCosts doubled = unit;
      doubled.redundancy_per_duplicate *= 2;
      doubled.security_per_shadow *= 2;
      doubled.security_per_creeped_permission *= 2;
      doubled.compliance_per_incident *= 2;
      doubled.operational_per_orphan *= 2;
      doubled.opportunity_per_lost_task *= 2;

      const double base = sprawl_cost(counts, unit).total;
      CHECK_THAT(sprawl_cost(counts, doubled).total,
                 Catch::Matchers::WithinRel(2.0 * base, 1e-12));

      SprawlCounts doubled_counts = counts;
      doubled_counts.duplicate_agents *= 2;
      doubled_counts.shadow_agents *= 2;
      doubled_counts.creeped_permissions *= 2;
      doubled_counts.incidents *= 2;
      doubled_counts.orphaned_agents *= 2;
      doubled_counts.lost_tasks *= 2;
      CHECK_THAT(sprawl_cost(doubled_counts, unit).total,
                 Catch::Matchers::WithinRel(2.0 * base, 1e-12));
    }
  }

  SECTION("negative rates are rejected") {
    UnitCosts bad = unit;
    bad.compliance_per_incident = -1.0;
    CHECK_THROWS_AS(sprawl_cost(SprawlCounts{}, bad), std::invalid_argument);
  }
}

TEST_CASE("baseline permissions are a fixed function of capability") {
  for (int i = 0; i < kCapabilityCount; ++i)
    CHECK(baseline_permissions_for(Capability(i)) ==
          baseline_permissions_check(Capability(i)));
}
