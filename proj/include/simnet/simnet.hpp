#pragma once

#include <simnet/catalog.hpp>
#include <simnet/concept.hpp>
#include <simnet/export.hpp>
#include <simnet/network.hpp>
#include <simnet/sawsdl.hpp>
#include <simnet/similarity.hpp>
#include <simnet/substitution.hpp>
#include <simnet/topology.hpp>
