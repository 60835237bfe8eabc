#pragma once

// Embedded reference datasets: relative air humidity at the Haarweg
// Wageningen weather station, May 2007 and May 2008, 31 daily values each.

#include <string>
#include <vector>

namespace betagof {

const std::vector<double>& dataset_may2007();
const std::vector<double>& dataset_may2008();

// nullptr when the name is unknown; names are "may2007" and "may2008".
const std::vector<double>* dataset_by_name(const std::string& name);

}  // namespace betagof
