#ifndef RELCON_RELCON_HPP
#define RELCON_RELCON_HPP

#include "relcon/clones.hpp"
#include "relcon/config.hpp"
#include "relcon/core.hpp"
#include "relcon/errors.hpp"
#include "relcon/galois.hpp"
#include "relcon/io.hpp"
#include "relcon/minors.hpp"
#include "relcon/oracle.hpp"
#include "relcon/partials.hpp"
#include "relcon/satisfaction.hpp"
#include "relcon/substitution.hpp"
#include "relcon/workspace.hpp"

#endif
