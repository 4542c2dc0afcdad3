#pragma once

namespace mapgen {

// Worker-thread cap for all parallel loops. Defaults to 1 so library calls
// are serial unless a caller opts in. Results never depend on the setting.
int max_threads();
void set_max_threads(int n);  // n <= 0 selects the hardware thread count

}  // namespace mapgen
