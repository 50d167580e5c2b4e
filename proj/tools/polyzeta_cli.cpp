#include "polyzeta/mzv.hpp"
int main(){return 0;}
