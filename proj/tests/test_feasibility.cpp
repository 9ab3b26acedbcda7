// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "stretchstab/error.hpp"
#include "stretchstab/feasibility.hpp"
#include "test_support.hpp"

using namespace stretchstab;
using doctest::Approx;

TEST_CASE("check_task on the assistive tasks") {
  const auto spec = stretch_re1();
  const auto pull = check_task(spec, {"drawer", LoadKind::kPull, 20.0, 0.7});
  CHECK(pull.pass);
  CHECK(pull.capability.value == Approx(testing::oracle_triangle_pull(spec, 0.7)).epsilon(1e-13));
  CHECK(pull.margin == Approx(13.83).epsilon(0.01 / 13.83));
  CHECK(pull.reason.empty());

  const auto payload = check_task(spec, {"object", LoadKind::kPayload, 1.2, std::nullopt});
  CHECK(payload.pass);
  CHECK(payload.margin == Approx(3.4709 - 1.2).epsilon(1e-4));
}

TEST_CASE("check_task failures carry a reason") {
  const auto spec = stretch_re1();
  const auto heavy = check_task(spec, {"heavy", LoadKind::kPayload, 5.0, std::nullopt});
  CHECK_FALSE(heavy.pass);
  CHECK(heavy.margin < 0.0);
  CHECK(heavy.reason == "exceeds capability");

  const auto high = check_task(spec, {"shelf", LoadKind::kPull, 1.0, 1.5});
  CHECK_FALSE(high.pass);
  CHECK(high.capability.value == 0.0);
  CHECK(high.reason == "unreachable");

  CHECK_THROWS_AS(check_task(spec, {"bad", LoadKind::kPush, -1.0, 0.5}), Error);
  CHECK_THROWS_AS(check_task(spec, {"bad", LoadKind::kPush, 1.0, std::nullopt}), Error);
}

TEST_CASE("check_task pass agrees with the margin sign") {
  auto rng = testing::make_rng(30);
  const LoadKind kinds[] = {LoadKind::kPull, LoadKind::kPush, LoadKind::kBackpush, LoadKind::kPayload};
  for (int i = 0; i < 500; ++i) {
    const auto spec = testing::random_spec(rng);
    TaskRequirement req;
    req.kind = kinds[i % 4];
    req.magnitude = testing::uniform(rng, 0.0, 200.0);
    if (req.kind == LoadKind::kPayload) {
      req.location = testing::uniform(rng, 0.01, 1.2 * spec.max_reach);
    } else {
      req.location = testing::uniform(rng, 0.01, 1.2 * spec.max_height);
    }
    const auto v = check_task(spec, req);
    CHECK(v.pass == (v.margin >= 0.0));
    CHECK(v.pass == v.reason.empty());
  }
}

TEST_CASE("check_manifest keeps order and counts") {
  const auto spec = stretch_re1();
  const std::vector<TaskRequirement> reqs = {
      {"a", LoadKind::kPull, 20.0, 0.7},
      {"b", LoadKind::kPush, 500.0, 0.7},
      {"c", LoadKind::kPull, 20.0, std::nullopt},
      {"d", LoadKind::kPayload, 1.2, std::nullopt},
  };
  const auto result = check_manifest(spec, reqs);
  REQUIRE(result.verdicts.size() == 4);
  CHECK(result.passed == 2);
  CHECK(result.failed == 2);
  CHECK_FALSE(result.all_pass());
  CHECK(result.verdicts[1].requirement.name == "b");
  CHECK(result.verdicts[2].reason.find("height") != std::string::npos);

  const auto csv = result.to_csv();
  CHECK(csv.rfind("name,kind,location_m,required,capability,margin,verdict,reason\n", 0) == 0);
  CHECK(csv.find("d,payload,D,1.2,3.47092,2.27092,pass,\n") != std::string::npos);
}
