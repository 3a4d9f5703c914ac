/**
 * main.ts - browser bootstrap.
 *
 * The service origin defaults to same-host port 8000 (the serve
 * default) and can be pinned with ?api=<origin>.
 */

import { ApiClient } from './api.js';
import { AppStore } from './state.js';
import { mountApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? `${window.location.protocol}//${window.location.hostname}:8000`;

const store = new AppStore(new ApiClient(base));
mountApp(document.getElementById('app')!, store);
