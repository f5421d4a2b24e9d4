#include "ising/stats.hpp"
