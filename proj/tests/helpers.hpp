#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "dflow/errors.hpp"

// matcher for asserting which errc a dflow::error carries
struct ErrcIs : Catch::Matchers::MatcherGenericBase {
    dflow::errc want;
    explicit ErrcIs(dflow::errc w) : want(w) {}
    bool match(const dflow::error& e) const { return e.code == want; }
    std::string describe() const override { return "carries the expected error code"; }
};
