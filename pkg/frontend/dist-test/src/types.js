/** JSON shapes of the interpret server's /api endpoints. */
export {};
