/** Shared plumbing for driving the mounted app in tests. */

import { ApiClient } from '../src/api.js';
import { mountApp } from '../src/app.js';
import { AppStore, ScreenName } from '../src/state.js';
import { BASE } from './config.js';

let counter = 0;

/** Unique project id per test, stable service root notwithstanding. */
export function uid(prefix: string): string {
  counter += 1;
  return `${prefix}-${Date.now()}-${counter}`;
}

export interface Harness {
  store: AppStore;
  api: ApiClient;
  root: HTMLElement;
}

export function mountedApp(): Harness {
  const api = new ApiClient(BASE);
  const store = new AppStore(api);
  const root = document.createElement('div');
  document.body.append(root);
  mountApp(root, store);
  return { store, api, root };
}

export function goTo(harness: Harness, screen: ScreenName): void {
  const button = harness.root.querySelector<HTMLButtonElement>(`[data-nav="${screen}"]`);
  button!.click();
}

/** Set a select's value and fire the change the UI listens for. */
export function choose(select: HTMLSelectElement, value: string): void {
  select.value = value;
  select.dispatchEvent(new Event('change'));
}

export function typeInto(input: HTMLInputElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event('input'));
}

export function tick(box: HTMLInputElement, on = true): void {
  box.checked = on;
  box.dispatchEvent(new Event('change'));
}

export function q<T extends HTMLElement>(scope: ParentNode, selector: string): T {
  const found = scope.querySelector(selector);
  if (!found) throw new Error(`nothing matches ${selector}`);
  return found as T;
}

/** Wait for every in-flight store action to finish. */
export async function settled(harness: Harness): Promise<void> {
  await harness.store.idle();
}
