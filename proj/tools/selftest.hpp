#pragma once

/// Quick oracle and property checks usable without the test suite.
/// Returns the number of failed checks and prints one line per check.
int run_selftest();
