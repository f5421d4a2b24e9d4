#include "ising/serialize.hpp"
