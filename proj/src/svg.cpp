#include "ising/svg.hpp"
