#pragma once

#include "symplift/error.hpp"
#include "symplift/residue.hpp"
#include "symplift/matmod.hpp"
#include "symplift/symplectic.hpp"
#include "symplift/liealg.hpp"
#include "symplift/groupengine.hpp"
#include "symplift/harvest.hpp"
#include "symplift/certifier.hpp"
#include "symplift/genfile.hpp"
#include "symplift/reproduce.hpp"
